"""Trace the fixed-point-or-witness pipeline on a few infinite actions."""

from cubefix import io
from cubefix.actions import AffineAut, GroupAction
from cubefix.complex import LatticeComplex
from cubefix.theorem_a import fixed_point_or_witness

Z, Z2 = LatticeComplex(1), LatticeComplex(2)

ACTIONS = {
    "dihedral on Z": GroupAction(Z, {"s": AffineAut((-1,), (0,), (0,)),
                                     "t": AffineAut((-1,), (0,), (2,))}, (0,)),
    "reflections of Z^2": GroupAction(Z2, {"s": AffineAut((-1, 1), (0, 1), (0, 0)),
                                           "u": AffineAut((1, -1), (0, 1), (0, 0))}, (0, 0)),
    "rotation of Z^2": GroupAction(Z2, {"r": AffineAut((-1, 1), (1, 0), (1, 0))}, (0, 0)),
    "wallpaper pmm": GroupAction(Z2, {"s": AffineAut((-1, 1), (0, 1), (0, 0)),
                                      "t": AffineAut((-1, 1), (0, 1), (2, 0)),
                                      "u": AffineAut((1, -1), (0, 1), (0, 0)),
                                      "w": AffineAut((1, -1), (0, 1), (0, 2))}, (0, 0)),
}

if __name__ == "__main__":
    for name, A in ACTIONS.items():
        out = fixed_point_or_witness(A.complex, A)
        print(f"## {name}")
        print(io.dumps(io.encode_outcome(A.complex, out)))
