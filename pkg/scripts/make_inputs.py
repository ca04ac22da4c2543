"""Write the sample JSON inputs under data/ used by the README and CLI tests."""
import argparse
import os

from eqpatch import birkhoff as bk
from eqpatch import fincat as fc
from eqpatch import serialize as ser
from eqpatch.equalizer import bl_eq_context, free_object
from eqpatch.matrix import Mat
from eqpatch.modcat import PresentedModule
from eqpatch.rings import Laurent, Poly, PrimeField, RationalFunctions


def inputs() -> dict:
    k = PrimeField(5)
    L, R, K = Laurent(k), Poly(k), RationalFunctions(k)
    s, t = L.gen(), R.gen()
    out = {}
    out["cocycle_split.json"] = ser.encode_cocycle(bk.Cocycle(Mat(L, [[s * s, L.zero()], [L.zero(), s**-1]])))
    out["cocycle_trivial.json"] = ser.encode_cocycle(bk.Cocycle(Mat(L, [[s, L.one()], [L.zero(), s**-1]])))
    out["module_t2.json"] = ser.encode_module(PresentedModule.from_invariants(R, [t**2], 0))
    out["module_t3_free.json"] = ser.encode_module(PresentedModule.from_invariants(R, [t**3], 1))
    out["snf_matrix.json"] = ser.encode_matrix(Mat(R, [[t, t * t], [t + 1, R.zero()]]))
    ctx = bl_eq_context(k)
    out["eq_object_t.json"] = ser.encode_eq_object(free_object(ctx, Mat(K, [[K.gen()]])))
    one = free_object(ctx, Mat(K, [[K.one()]]))
    out["eq_morphism_t.json"] = {
        "source": ser.encode_eq_object(one),
        "target": ser.encode_eq_object(one),
        "maps": [ser.encode_matrix(Mat(Lr, [[Lr.gen()]]), False) for Lr in ctx.lanes],
    }
    C = fc.cyclic_group(2)
    Id = fc.identity_functor(C)
    out["fincat_bz2.json"] = {
        "source": ser.encode_fincat(C),
        "target": ser.encode_fincat(C),
        "test": ser.encode_fincat(fc.arrow()),
        "d0": ser.encode_functor(Id),
        "d1": ser.encode_functor(Id),
    }
    return out


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--dir", default=os.path.join(os.path.dirname(__file__), "..", "data"))
    args = p.parse_args()
    os.makedirs(args.dir, exist_ok=True)
    for name, d in inputs().items():
        with open(os.path.join(args.dir, name), "w") as fh:
            fh.write(ser.dumps(d) + "\n")
        print(name)


if __name__ == "__main__":
    main()
