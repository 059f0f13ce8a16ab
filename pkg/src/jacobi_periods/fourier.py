"""Exact truncated Fourier expansions for index-one Jacobi forms and the
one-variable q-series attached to them, with the Hecke actions on
coefficients.

Exponents are stored scaled by a positive integer (``n_scaled = scale * n``),
coefficients are exact rationals, and every operation records the largest
truncation bound ``qbound`` for which its output is provably complete given
the completeness of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from .arith import divisors, hurwitz, is_fundamental_discriminant, kronecker, l_zero_chi, moebius, sigma
from .errors import DomainError


def _num(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass
class QSeries:
    """Truncated one-variable q-series with rational exponents n_scaled/scale."""

    scale: int
    coeffs: dict[int, Fraction] = field(default_factory=dict)
    qbound: Fraction = Fraction(0)

    def __post_init__(self):
        self.qbound = _num(self.qbound)
        self.coeffs = {n: _num(c) for n, c in self.coeffs.items() if c}

    def coeff(self, n_scaled: int) -> Fraction:
        return self.coeffs.get(n_scaled, Fraction(0))

    def rescaled(self, new_scale: int) -> "QSeries":
        if new_scale % self.scale:
            raise DomainError("new scale must be a multiple of the old one")
        f = new_scale // self.scale
        return QSeries(new_scale, {n * f: c for n, c in self.coeffs.items()}, self.qbound)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        s = gcd(self.scale, other.scale)
        lcm = self.scale // s * other.scale
        return self.rescaled(lcm).coeffs == other.rescaled(lcm).coeffs

    def equal_below(self, other: "QSeries", bound) -> bool:
        bound = _num(bound)
        if bound > min(self.qbound, other.qbound):
            raise DomainError("comparison bound exceeds a completeness bound")
        s = gcd(self.scale, other.scale)
        lcm = self.scale // s * other.scale
        a, b = self.rescaled(lcm), other.rescaled(lcm)
        for n in set(a.coeffs) | set(b.coeffs):
            if Fraction(n, lcm) < bound and a.coeff(n) != b.coeff(n):
                return False
        return True

    def to_json_dict(self) -> dict:
        return {
            "scale": self.scale,
            "qbound": _frac_json(self.qbound),
            "terms": [[n, c.numerator, c.denominator] for n, c in sorted(self.coeffs.items())],
        }


@dataclass
class JacobiExpansion:
    """Truncated two-variable expansion sum c(n, r) q^n zeta^r with
    n = n_scaled/scale; complete for n < qbound."""

    weight: Fraction
    index: Fraction
    scale: int
    coeffs: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    qbound: Fraction = Fraction(0)

    def __post_init__(self):
        self.weight = _num(self.weight)
        self.index = _num(self.index)
        self.qbound = _num(self.qbound)
        self.coeffs = {k: _num(c) for k, c in self.coeffs.items() if c}

    def coeff(self, n_scaled: int, r: int) -> Fraction:
        return self.coeffs.get((n_scaled, r), Fraction(0))

    def scaled_by(self, k) -> "JacobiExpansion":
        k = _num(k)
        return JacobiExpansion(self.weight, self.index, self.scale,
                               {key: k * c for key, c in self.coeffs.items()} if k else {},
                               self.qbound)

    def rescaled(self, new_scale: int) -> "JacobiExpansion":
        if new_scale % self.scale:
            raise DomainError("new scale must be a multiple of the old one")
        f = new_scale // self.scale
        return JacobiExpansion(self.weight, self.index, new_scale,
                               {(n * f, r): c for (n, r), c in self.coeffs.items()},
                               self.qbound)

    def __add__(self, other: "JacobiExpansion") -> "JacobiExpansion":
        if self.weight != other.weight or self.index != other.index:
            raise DomainError("weights and indices must match")
        s = gcd(self.scale, other.scale)
        lcm = self.scale // s * other.scale
        a, b = self.rescaled(lcm), other.rescaled(lcm)
        out = dict(a.coeffs)
        for key, c in b.coeffs.items():
            v = out.get(key, Fraction(0)) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return JacobiExpansion(self.weight, self.index, lcm, out,
                               min(self.qbound, other.qbound))

    def equal_below(self, other: "JacobiExpansion", bound) -> bool:
        bound = _num(bound)
        if bound > min(self.qbound, other.qbound):
            raise DomainError("comparison bound exceeds a completeness bound")
        s = gcd(self.scale, other.scale)
        lcm = self.scale // s * other.scale
        a, b = self.rescaled(lcm), other.rescaled(lcm)
        for key in set(a.coeffs) | set(b.coeffs):
            if Fraction(key[0], lcm) < bound and a.coeff(*key) != b.coeff(*key):
                return False
        return True

    def min_discriminant(self) -> Fraction | None:
        """min over stored terms of 4*index*n - r^2, None when empty."""
        vals = [4 * self.index * Fraction(n, self.scale) - r * r for (n, r) in self.coeffs]
        return min(vals) if vals else None

    def to_json_dict(self) -> dict:
        return {
            "weight": _frac_json(self.weight),
            "index": _frac_json(self.index),
            "scale": self.scale,
            "qbound": _frac_json(self.qbound),
            "terms": [[n, r, c.numerator, c.denominator]
                      for (n, r), c in sorted(self.coeffs.items())],
        }


def _frac_json(x: Fraction):
    return x.numerator if x.denominator == 1 else [x.numerator, x.denominator]


# ---------------------------------------------------------------------------
# Standard series


def theta(mu: int, qbound) -> JacobiExpansion:
    """Index-one theta component: sum over r = mu mod 2 of q^(r^2/4) zeta^r."""
    if mu not in (0, 1):
        raise DomainError("mu must be 0 or 1")
    qbound = _num(qbound)
    coeffs = {}
    r = mu
    while Fraction(r * r, 4) < qbound:
        coeffs[(r * r, r)] = Fraction(1)
        if r:
            coeffs[(r * r, -r)] = Fraction(1)
        r += 2
    return JacobiExpansion(Fraction(1, 2), 1, 4, coeffs, qbound)


def h_mu_series(mu: int, qbound) -> QSeries:
    """Class-number component series sum H(N) q^(N/4) over N = -mu^2 mod 4."""
    if mu not in (0, 1):
        raise DomainError("mu must be 0 or 1")
    qbound = _num(qbound)
    res = 0 if mu == 0 else 3
    coeffs = {}
    n = res if res else 0
    while Fraction(n, 4) < qbound:
        h = hurwitz(n)
        if h:
            coeffs[n] = h
        n += 4
    return QSeries(4, coeffs, qbound)


def h32_series(qbound) -> QSeries:
    """sum_{N >= 0} H(N) q^N; equals the two component series in 4*tau."""
    qbound = _num(qbound)
    coeffs = {}
    n = 0
    while n < qbound:
        h = hurwitz(n)
        if h:
            coeffs[n] = h
        n += 1
    return QSeries(1, coeffs, qbound)


def e2_series(qbound) -> QSeries:
    """Weight-2 Eisenstein series 1 - 24 sum sigma_1(n) q^n."""
    qbound = _num(qbound)
    coeffs = {0: Fraction(1)}
    n = 1
    while n < qbound:
        coeffs[n] = Fraction(-24 * sigma(n, 1))
        n += 1
    return QSeries(1, coeffs, qbound)


def e21_expansion(qbound) -> JacobiExpansion:
    """Weight-2 index-1 Eisenstein-type expansion -12 sum H(4n - r^2) q^n zeta^r."""
    qbound = _num(qbound)
    coeffs = {}
    n = 0
    while n < qbound:
        for r in range(-isqrt(4 * n), isqrt(4 * n) + 1):
            c = -12 * hurwitz(4 * n - r * r)
            if c:
                coeffs[(n, r)] = c
        n += 1
    return JacobiExpansion(2, 1, 1, coeffs, qbound)


def theta_combination(h0: QSeries, h1: QSeries, weight=2, index=1) -> JacobiExpansion:
    """-12 (h0 * theta_0 + h1 * theta_1) as a scale-4 expansion."""
    if h0.scale != 4 or h1.scale != 4:
        raise DomainError("component series must have scale 4")
    bound = min(h0.qbound, h1.qbound)
    coeffs: dict[tuple[int, int], Fraction] = {}
    for h, mu in ((h0, 0), (h1, 1)):
        th = theta(mu, bound)
        for ns, c in h.coeffs.items():
            for (ts, r), tcoef in th.coeffs.items():
                key = (ns + ts, r)
                if Fraction(key[0], 4) >= bound:
                    continue
                v = coeffs.get(key, Fraction(0)) - 12 * c * tcoef
                if v:
                    coeffs[key] = v
                else:
                    coeffs.pop(key, None)
    return JacobiExpansion(weight, index, 4, coeffs, bound)


def theta_decomposition_check(qbound) -> bool:
    """Coefficient-wise identity between the class-number expansion and its
    theta decomposition, below qbound."""
    qbound = _num(qbound)
    combo = theta_combination(h_mu_series(0, qbound), h_mu_series(1, qbound))
    return e21_expansion(qbound).equal_below(combo, qbound)


# ---------------------------------------------------------------------------
# Hecke operators on coefficients


def _require_integral(f: JacobiExpansion, op: str):
    if f.scale != 1:
        raise DomainError(f"{op} needs integer exponents (scale 1), got scale {f.scale}")
    if f.index.denominator != 1:
        raise DomainError(f"{op} needs an integer index")
    if f.weight.denominator != 1:
        raise DomainError(f"{op} needs an integer weight")


def apply_V(f: JacobiExpansion, ell: int) -> JacobiExpansion:
    """Index-raising Hecke action: c'(n, r) = sum over a | gcd(n, r, ell) of
    a^(k-1) c(n*ell/a^2, r/a); index becomes index*ell."""
    _require_integral(f, "apply_V")
    if ell < 1:
        raise DomainError("ell must be >= 1")
    k = int(f.weight)
    if ell == 1:
        return JacobiExpansion(f.weight, f.index, 1, dict(f.coeffs), f.qbound)
    by_n: dict[int, list] = {}
    for (n, r), c in f.coeffs.items():
        by_n.setdefault(n, []).append((r, c))
    qb = int(f.qbound) if f.qbound == int(f.qbound) else int(f.qbound) + 1
    q_out = (qb - 1) // ell + 1 if qb >= 1 else 0
    coeffs: dict[tuple[int, int], Fraction] = {}
    for n in range(q_out):
        for a in divisors(ell if n == 0 else gcd(n, ell)):
            src = n * ell
            if src % (a * a):
                continue
            for r1, c in by_n.get(src // (a * a), ()):
                key = (n, a * r1)
                v = coeffs.get(key, Fraction(0)) + a ** (k - 1) * c
                if v:
                    coeffs[key] = v
                else:
                    coeffs.pop(key, None)
    return JacobiExpansion(f.weight, f.index * ell, 1, coeffs, q_out)


def _tj_needed_nmax(n: int, N: int) -> int:
    """Largest input exponent a complete output coefficient at q^N can read."""
    return n * n * (N + isqrt(4 * N) * (n - 1) + (n - 1) ** 2)


def apply_T_jacobi(f: JacobiExpansion, n: int) -> JacobiExpansion:
    """Index-preserving Hecke action on an index-1 expansion, by exact
    evaluation of the full geometric character sums.

    For each factorization a*d = n^2 the sum over b mod d with square
    gcd(a, b, d) collapses, via divisors e^2 | gcd(a, d) and a Moebius sieve,
    to integer multiples of divisibility indicators; the lattice sums force
    d | r*n and contribute a factor n.  No irrational intermediary appears.
    """
    _require_integral(f, "apply_T_jacobi")
    if f.index != 1:
        raise DomainError("only index 1 is supported")
    if n < 1:
        raise DomainError("n must be >= 1")
    k = int(f.weight)
    dmin = f.min_discriminant()
    if dmin is not None and dmin < 0:
        raise DomainError("input support must satisfy 4n - r^2 >= 0")
    if n == 1:
        return JacobiExpansion(f.weight, 1, 1, dict(f.coeffs), f.qbound)
    qb = int(f.qbound)
    q_out = 0
    while _tj_needed_nmax(n, q_out) < qb:
        q_out += 1
    coeffs: dict[tuple[int, int], Fraction] = {}
    for a in divisors(n * n):
        d = n * n // a
        g = gcd(a, d)
        # output discriminants scale by a/d; prune inputs that cannot reach q_out
        base = Fraction(n) ** (k - 4) * Fraction(n, d) ** k * n
        # b-sum sieve: partition over the exact gcd eps = gcd(a, b, d), a
        # perfect square dividing g, then a Moebius sieve over t | g/eps;
        # each piece is a full geometric sum of block size d/(eps*t)
        sieve = []
        for eps in divisors(g):
            if isqrt(eps) ** 2 != eps:
                continue
            for t in divisors(g // eps):
                mt = moebius(t)
                if mt:
                    block = d // (eps * t)
                    sieve.append((block, mt * block))
        for (np_, rp), c in f.coeffs.items():
            disc = 4 * np_ - rp * rp
            if a * disc >= 4 * q_out * d:
                continue
            if (rp * n) % d:
                continue
            rnd = rp * n // d
            for block, kappa in sieve:
                if np_ % block:
                    continue
                w = base * kappa * c
                na = np_ * a // d
                for x in range(n):
                    N = na + rnd * x + x * x
                    if 0 <= N < q_out:
                        key = (N, rnd + 2 * x)
                        v = coeffs.get(key, Fraction(0)) + w
                        if v:
                            coeffs[key] = v
                        else:
                            coeffs.pop(key, None)
    return JacobiExpansion(f.weight, 1, 1, coeffs, q_out)


def apply_T_half(h: QSeries, p: int) -> QSeries:
    """Half-integral-weight Hecke action on a series supported on
    N = 0, 3 mod 4: c'(N) = c(N p^2) + (-N/p) c(N) + p c(N/p^2)."""
    if h.scale != 1:
        raise DomainError("scale-1 series required")
    for n in h.coeffs:
        if n % 4 in (1, 2):
            raise DomainError("support must lie in N = 0, 3 mod 4")
    qb = int(h.qbound)
    q_out = (qb - 1) // (p * p) + 1 if qb >= 1 else 0
    coeffs = {}
    for n in range(q_out):
        if n % 4 in (1, 2):
            continue
        v = h.coeff(n * p * p) + kronecker(-n, p) * h.coeff(n)
        if n % (p * p) == 0:
            v += p * h.coeff(n // (p * p))
        if v:
            coeffs[n] = v
    return QSeries(1, coeffs, q_out)


def apply_T_weight2(e: QSeries, p: int, literal: bool = False) -> QSeries:
    """Weight-2 Hecke action c'(n) = c(pn) + p c(n/p).

    With ``literal=True`` the exponent on the lower term follows the d^(-4)
    normalization instead, c'(n) = p c(n/p) + p^(-2) c(pn), whose constant
    term p + p^(-2) visibly breaks the (p+1)-eigenvalue property."""
    if e.scale != 1:
        raise DomainError("scale-1 series required")
    qb = int(e.qbound)
    q_out = (qb - 1) // p + 1 if qb >= 1 else 0
    coeffs = {}
    for n in range(q_out):
        if literal:
            v = Fraction(1, p * p) * e.coeff(n * p)
            if n % p == 0:
                v += p * e.coeff(n // p)
        else:
            v = e.coeff(n * p)
            if n % p == 0:
                v += p * e.coeff(n // p)
        if v:
            coeffs[n] = v
    return QSeries(1, coeffs, q_out)


# ---------------------------------------------------------------------------
# Lifts and the commuting square


def phi_lift(c: QSeries, disc: int) -> QSeries:
    """Lift to a weight-2-type series: -12 c(0) - (24 / L(0, chi_D)) *
    sum_n sum_{d | n} (D/d) c(n^2 |D| / d^2) q^n, D a fundamental
    discriminant < 0.

    On the class-number series the constant term -12 c(0) equals 1; writing
    it through c(0) rather than as a literal 1 is what makes the lift commute
    with the Hecke actions on both sides of the lifting square."""
    if disc >= 0 or not is_fundamental_discriminant(disc):
        raise DomainError(f"{disc} is not a negative fundamental discriminant")
    if c.scale != 1:
        raise DomainError("scale-1 series required")
    if any(n < 0 for n in c.coeffs):
        raise DomainError("support must be nonnegative")
    lval = l_zero_chi(disc)
    amp = Fraction(24, 1) / lval
    qb = int(c.qbound)
    absd = -disc
    t = 0
    while (t + 1) * (t + 1) * absd < qb:
        t += 1
    q_out = t + 1
    coeffs = {0: -12 * c.coeff(0)} if c.coeff(0) else {}
    for n in range(1, q_out):
        acc = Fraction(0)
        for d in divisors(n):
            acc += kronecker(disc, d) * c.coeff(n * n * absd // (d * d))
        v = -amp * acc
        if v:
            coeffs[n] = v
    return QSeries(1, coeffs, q_out)


def psi_lift(c: QSeries) -> JacobiExpansion:
    """Lift to a weight-2 index-1 expansion: -12 sum_{r^2 <= 4n} c(4n - r^2) q^n zeta^r."""
    if c.scale != 1:
        raise DomainError("scale-1 series required")
    for n in c.coeffs:
        if n % 4 in (1, 2):
            raise DomainError("support must lie in N = 0, 3 mod 4")
    qb = int(c.qbound)
    q_out = (qb - 1) // 4 + 1 if qb >= 1 else 0
    coeffs = {}
    for n in range(q_out):
        for r in range(-isqrt(4 * n), isqrt(4 * n) + 1):
            v = -12 * c.coeff(4 * n - r * r)
            if v:
                coeffs[(n, r)] = v
    return JacobiExpansion(2, 1, 1, coeffs, q_out)


def diagram_check(p: int, disc: int, qbound: int, literal_weight2: bool = False) -> dict:
    """Exact commutativity of the lift square: the half-integral Hecke action
    followed by either lift agrees with the lift followed by the weight-2
    resp. index-1 Hecke action, below qbound."""
    if qbound < 1:
        raise DomainError("qbound must be >= 1")
    absd = -disc
    need_phi = p * p * (qbound - 1) ** 2 * absd + 1
    need_psi = 4 * ((qbound - 1) * p * p) + 1
    need_tj = 4 * _tj_needed_nmax(p, qbound - 1) + 5
    h = h32_series(max(need_phi, need_psi, need_tj))
    th = apply_T_half(h, p)

    lhs_phi = phi_lift(th, disc)
    rhs_phi = apply_T_weight2(phi_lift(h, disc), p, literal=literal_weight2)
    phi_ok = lhs_phi.equal_below(rhs_phi, qbound)

    lhs_psi = psi_lift(th)
    rhs_psi = apply_T_jacobi(psi_lift(h), p)
    psi_ok = lhs_psi.equal_below(rhs_psi, qbound)
    return {"phi_commutes": phi_ok, "psi_commutes": psi_ok, "ok": phi_ok and psi_ok,
            "p": p, "D": disc, "qbound": qbound}
