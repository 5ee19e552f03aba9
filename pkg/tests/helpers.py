"""Fixed axes shared by the tests."""

from hvsim.quantum.linalg import UnitVector3

X = UnitVector3(1.0, 0.0, 0.0)
Y = UnitVector3(0.0, 1.0, 0.0)
Z = UnitVector3(0.0, 0.0, 1.0)
