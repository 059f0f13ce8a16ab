"""Exact algebra of the Jacobi group and its ambient triple group.

Elements are [M, (lambda, mu), zeta] with a rational 2x2 matrix M of positive
determinant, a rational translation pair, and a rational phase theta in [0,1)
standing for zeta = e^{2 pi i theta}.  The triple law is

    [M1, X1, t1][M2, X2, t2] = [M1 M2, X1 M2 + X2, t1 + t2 + det(X1 M2; X2)]

with the determinant of the 2x2 matrix whose rows are X1 M2 and X2 taken
mod 1.  On integer data every cocycle determinant is an integer, so the
integer subgroup sits at phase 0.  Composition is associative whenever all
matrix determinants are 1 or all data is integral (the cocycle is then a
coboundary-free 2-cocycle resp. trivial mod 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

Mat = tuple[Fraction, Fraction, Fraction, Fraction]


def _frac_mat(m) -> Mat:
    if len(m) == 2:  # ((a, b), (c, d)) rows
        (a, b), (c, d) = m
    else:
        a, b, c, d = m
    return (Fraction(a), Fraction(b), Fraction(c), Fraction(d))


@dataclass(frozen=True)
class JacobiGroupElement:
    """[M, (lam, mu), zeta] with M = (a, b, c, d) row-major, det M > 0."""

    mat: Mat
    trans: tuple[Fraction, Fraction]
    phase: Fraction = Fraction(0)

    @classmethod
    def make(cls, mat, trans=(0, 0), phase=0) -> "JacobiGroupElement":
        m = _frac_mat(mat)
        det = m[0] * m[3] - m[1] * m[2]
        if det <= 0:
            raise DomainError(f"matrix determinant must be positive, got {det}")
        lam, mu = Fraction(trans[0]), Fraction(trans[1])
        return cls(mat=m, trans=(lam, mu), phase=Fraction(phase) % 1)

    @property
    def det(self) -> Fraction:
        a, b, c, d = self.mat
        return a * d - b * c

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in (*self.mat, *self.trans))

    def __mul__(self, other: "JacobiGroupElement") -> "JacobiGroupElement":
        return compose(self, other)

    def __repr__(self):
        a, b, c, d = self.mat
        lam, mu = self.trans
        s = f"[[{a},{b}],[{c},{d}]], ({lam},{mu})"
        if self.phase:
            s += f", e(2pi i {self.phase})"
        return f"JacobiGroupElement({s})"


def compose(g1: JacobiGroupElement, g2: JacobiGroupElement) -> JacobiGroupElement:
    a1, b1, c1, d1 = g1.mat
    a2, b2, c2, d2 = g2.mat
    mat = (
        a1 * a2 + b1 * c2,
        a1 * b2 + b1 * d2,
        c1 * a2 + d1 * c2,
        c1 * b2 + d1 * d2,
    )
    l1, m1 = g1.trans
    l2, m2 = g2.trans
    # X1 * M2 as a row vector
    u = l1 * a2 + m1 * c2
    v = l1 * b2 + m1 * d2
    trans = (u + l2, v + m2)
    cocycle = u * m2 - v * l2
    phase = (g1.phase + g2.phase + cocycle) % 1
    return JacobiGroupElement(mat=mat, trans=trans, phase=phase)


def inverse(g: JacobiGroupElement) -> JacobiGroupElement:
    a, b, c, d = g.mat
    det = g.det
    inv = (d / det, -b / det, -c / det, a / det)
    l, m = g.trans
    trans = (-(l * inv[0] + m * inv[2]), -(l * inv[1] + m * inv[3]))
    # the cocycle of g * g^{-1} vanishes (rows are proportional), so the
    # phase simply negates
    return JacobiGroupElement(mat=inv, trans=trans, phase=(-g.phase) % 1)


def identity() -> JacobiGroupElement:
    return JacobiGroupElement.make(((1, 0), (0, 1)))


_GENERATORS = {
    "S": (((1, 1), (0, 1)), (0, 0)),
    "T": (((0, -1), (1, 0)), (1, 0)),
    "T0": (((0, -1), (1, 0)), (0, 0)),
    "U": (((1, -1), (1, 0)), (1, 0)),
    "I1": (((1, 0), (0, 1)), (0, 1)),
    "I2": (((1, 0), (0, 1)), (1, 0)),
    "E": (((1, 0), (0, 1)), (0, 0)),
}


def generator(name: str) -> JacobiGroupElement:
    """One of the standard elements S, T, T0, U, I1, I2, E."""
    try:
        mat, trans = _GENERATORS[name]
    except KeyError:
        raise DomainError(f"unknown generator {name!r}; expected one of {sorted(_GENERATORS)}")
    return JacobiGroupElement.make(mat, trans)


def minus_identity_shift() -> JacobiGroupElement:
    """[-I, (1, 0)]: the alternative reading of the I2-type element that
    appears in the extended period relation; both are exercised numerically."""
    return JacobiGroupElement.make(((-1, 0), (0, -1)), (1, 0))


def power(g: JacobiGroupElement, n: int) -> JacobiGroupElement:
    if n < 0:
        return power(inverse(g), -n)
    out = identity()
    for _ in range(n):
        out = compose(out, g)
    return out


def eq_mod_sign(g1: JacobiGroupElement, g2: JacobiGroupElement) -> bool:
    """Equality with matrices compared up to a global sign; translations and
    phases compared exactly."""
    if g1.trans != g2.trans or g1.phase != g2.phase:
        return False
    neg = tuple(-v for v in g2.mat)
    return g1.mat == g2.mat or g1.mat == neg


def check_relations() -> dict[str, bool]:
    """Evaluate the defining relations by exact composition."""
    S, T, U, E = (generator(n) for n in ("S", "T", "U", "E"))
    T2 = power(T, 2)
    shift = lambda l, m: JacobiGroupElement.make(((1, 0), (0, 1)), (l, m))
    UT2 = compose(U, T2)
    return {
        "U = S*T": eq_mod_sign(compose(S, T), U),
        "T^4 = E": eq_mod_sign(power(T, 4), E),
        "U^6 = E": eq_mod_sign(power(U, 6), E),
        "U T^2 = T^2 U [I,(-1,0)]": eq_mod_sign(UT2, compose(compose(T2, U), shift(-1, 0))),
        "U T^2 = T^2 [I,(0,-1)] U": eq_mod_sign(UT2, compose(compose(T2, shift(0, -1)), U)),
        "U T^2 = [I,(0,1)] T^2 U": eq_mod_sign(UT2, compose(compose(shift(0, 1), T2), U)),
    }


def compose_literal_subscriptfree(g1: JacobiGroupElement, g2: JacobiGroupElement) -> JacobiGroupElement:
    """The semidirect law read with the ambiguous subscript-free pair taken
    from the right factor: lattice part (l2, m2) M2 + (l2, m2).  Kept only to
    demonstrate that this reading breaks the group axioms; see the CLI's
    --literal-paper flag."""
    a2, b2, c2, d2 = g2.mat
    l2, m2 = g2.trans
    mat = compose(g1, g2).mat
    trans = (l2 * a2 + m2 * c2 + l2, l2 * b2 + m2 * d2 + m2)
    return JacobiGroupElement(mat=mat, trans=trans, phase=Fraction(0))
