"""Complex-numerical engine: series evaluation with tail control, the
weighted slash action, the nonholomorphic completion integrals, and the
floating verification suite for the period-function identities.

Conventions fixed by computation rather than assumption:

* The automorphy factor is

      j(g; tau, z) = zeta^m (c tau + d)^{-k}
                     exp(2 pi i m (lam^2 tau + 2 lam z + lam mu - c w^2 / (c tau + d)))

  with w = z + lam tau + mu and the matrix normalized by 1/sqrt(det).  The
  quadratic term is taken at the translated w; only with that reading does
  the factor satisfy the cocycle identity against the exact triple-group
  law (phases included), which the test suite checks to 1e-10 and better.

* The period integral for the weight-2 index-1 class-number series is

      P(tau, z) = -(24/pi) * (1+i)/16 * sum_mu I_mu(tau) theta_mu(tau, z),
      I_mu(tau) = int_0^{i inf} (tau + w)^{-3/2} theta_mu(w, 0) dw.

  The -(24/pi) normalization is pinned by the transformation-law identity
  (E|T) - E = P, which holds at working precision with it and fails by that
  exact constant ratio without it.

All evaluations are pure; sums over Hecke terms are reduced by a fixed
pairwise tree so results are bit-stable for a given configuration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import DomainError, PrecisionError
from .fourier import JacobiExpansion, QSeries, e21_expansion, h_mu_series
from .group_ring import FormalSum, tilde_T, tilde_V
from .jacobi_group import JacobiGroupElement, generator, minus_identity_shift, power


@dataclass(frozen=True)
class EvalPoint:
    tau: complex
    z: complex = 0j

    def __post_init__(self):
        if not (getattr(self.tau, "imag", 0) > 0):
            raise DomainError("tau must lie in the upper half plane")


@dataclass(frozen=True)
class NumericConfig:
    qmax: int = 48            # series truncation used when building expansions
    quad_nodes: int = 6       # max Gauss-Legendre degree passed to the integrator
    tol: float = 1e-9         # verification tolerance for self-checks
    dps: int = 30             # working precision in decimal digits

    def __post_init__(self):
        if min(self.qmax, self.quad_nodes, self.dps) <= 0 or self.tol <= 0:
            raise DomainError("all configuration fields must be positive")


DEFAULT_POINTS = (
    EvalPoint(complex(0.0, 1.0), complex(0.1, 0.2)),
    EvalPoint(complex(0.3, 1.1), 0j),
    EvalPoint(complex(0.0, 2.0), complex(0.25, 0.0)),
)


def _mpc(x):
    return mp.mpc(x)


def _e(x):
    """exp(2 pi i x)."""
    return mp.e ** (2j * mp.pi * _mpc(x))


def pairwise_sum(values):
    """Summation by a fixed pairwise tree (order-stable reduction)."""
    vals = list(values)
    if not vals:
        return mp.mpc(0)
    while len(vals) > 1:
        vals = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)] + (
            [vals[-1]] if len(vals) % 2 else []
        )
    return vals[0]


# ---------------------------------------------------------------------------
# Series evaluation


def _tail_bound(f, tau, z, cfg) -> mp.mpf:
    """Bound the dropped tail of a truncated expansion at (tau, z) assuming
    the coefficient growth |c(n, r)| <= C (n+1)^2 estimated from the stored
    data (exact for the class-number series, whose coefficients grow
    linearly), with the zeta-support r^2 <= 4 * index * n."""
    v = mp.im(tau)
    y = abs(mp.im(z)) if isinstance(f, JacobiExpansion) else mp.mpf(0)
    m = float(f.index) if isinstance(f, JacobiExpansion) else 0.0
    cmax = mp.mpf(1)
    for key, c in f.coeffs.items():
        n = (key[0] if isinstance(key, tuple) else key) / f.scale
        cmax = max(cmax, abs(mp.mpf(c.numerator) / c.denominator) / (n + 1) ** 2)
    q = mp.e ** (-2 * mp.pi * v / f.scale)
    total = mp.mpf(0)
    nstart = int(mp.floor(f.qbound * f.scale))
    prev = None
    for ns in range(nstart, nstart + 2000):
        n = mp.mpf(ns) / f.scale
        width = 4 * mp.sqrt(m * n) + 2 * m + 1 if m else 1
        amp = mp.e ** (2 * mp.pi * (2 * mp.sqrt(m * n) + m) * y) if m else mp.mpf(1)
        term = cmax * (n + 1) ** 2 * width * amp * q**ns
        total += term
        if prev:
            ratio = term / prev
            if ratio < mp.mpf("0.9") and term < mp.mpf(10) ** (-cfg.dps - 10) * (total + 1):
                return total + term * ratio / (1 - ratio)
        prev = term
    raise PrecisionError("tail bound did not certify; increase qmax or Im(tau)")


def eval_expansion(f, point: EvalPoint, cfg: NumericConfig | None = None):
    """Evaluate a truncated expansion at (tau, z); returns (value, tail_bound)
    with the bound certifying the truncation error of the stored partial sum."""
    cfg = cfg or NumericConfig()
    with mp.workdps(cfg.dps):
        tau, z = _mpc(point.tau), _mpc(point.z)
        terms = []
        if isinstance(f, JacobiExpansion):
            for (ns, r), c in sorted(f.coeffs.items()):
                terms.append((mp.mpf(c.numerator) / c.denominator)
                             * _e(mp.mpf(ns) / f.scale * tau + r * z))
        elif isinstance(f, QSeries):
            for ns, c in sorted(f.coeffs.items()):
                terms.append((mp.mpf(c.numerator) / c.denominator)
                             * _e(mp.mpf(ns) / f.scale * tau))
        else:
            raise DomainError("unsupported expansion type")
        value = pairwise_sum(terms)
        bound = _tail_bound(f, tau, z, cfg)
        if bound > cfg.tol:
            extra = float(mp.log(bound / mp.mpf(cfg.tol)) / (2 * mp.pi * mp.im(tau)))
            raise PrecisionError(
                f"tail bound {mp.nstr(bound, 3)} exceeds tol {cfg.tol}",
                required_qbound=int(float(f.qbound) + extra + 2),
            )
        return value, bound


# ---------------------------------------------------------------------------
# Slash action


def slash(fval, g: JacobiGroupElement, k, m):
    """The weighted action: returns (tau, z) -> j(g; tau, z) fval(g(tau, z)).

    Matrices of determinant ell > 0 are divided by sqrt(ell) first; the
    translation and phase slots are used as stored.  Non-integer k uses the
    principal branch of (c tau + d)^(-k)."""
    det = g.det
    kf = mp.mpf(k.numerator) / k.denominator if isinstance(k, Fraction) else mp.mpf(k)

    def acted(tau, z):
        tau, z = _mpc(tau), _mpc(z)
        s = mp.sqrt(mp.mpf(det.numerator) / det.denominator)
        a, b, c, d = (mp.mpf(v.numerator) / v.denominator / s for v in g.mat)
        lam = mp.mpf(g.trans[0].numerator) / g.trans[0].denominator
        mu = mp.mpf(g.trans[1].numerator) / g.trans[1].denominator
        den = c * tau + d
        w = z + lam * tau + mu
        j = den ** (-kf) * _e(m * (lam * lam * tau + 2 * lam * z + lam * mu - c * w * w / den))
        if g.phase:
            j *= _e(m * (mp.mpf(g.phase.numerator) / g.phase.denominator))
        return j * fval((a * tau + b) / den, w / den)

    return acted


def slash_ring_term(fval, e, k, m):
    """Slash by a stored ring basis element (integer matrix, scaled lattice)."""
    lam = Fraction(e.x2, e.level)
    mu = Fraction(e.y2, e.level)
    g = JacobiGroupElement.make((e.mat[0:2], e.mat[2:4]), (lam, mu))
    return slash(fval, g, k, m)


def slash_formal_sum(fval, f: FormalSum, k, m):
    """Sum of the slashes over a formal sum's terms, pairwise-reduced."""
    parts = [(slash_ring_term(fval, e, k, m), c) for e, c in f.sorted_terms()]

    def acted(tau, z):
        return pairwise_sum(c * fn(tau, z) for fn, c in parts)

    return acted


# ---------------------------------------------------------------------------
# Theta, completion terms, and the period integral


def theta_value(mu: int, tau, z):
    """theta_mu(tau, z) = sum over r = mu mod 2 of q^(r^2/4) zeta^r, truncated
    where the term magnitude e^(-2 pi (r^2 v/4 - |r y|)) is provably below
    working precision for all remaining r."""
    tau, z = _mpc(tau), _mpc(z)
    v, y = mp.im(tau), abs(mp.im(z))
    kexp = (mp.mp.dps + 4) * mp.log(10) / (2 * mp.pi)
    rmax = int(2 * (y + mp.sqrt(y * y + v * kexp)) / v) + 2
    total = mp.mpc(0)
    r = mu
    while r <= rmax:
        total += _e(r * r / mp.mpf(4) * tau + r * z)
        if r:
            total += _e(r * r / mp.mpf(4) * tau - r * z)
        r += 2
    return total


def beta_fn(x):
    """(1/16 pi) int_1^inf u^(-3/2) e^(-xu) du in closed form."""
    x = mp.mpf(x)
    if x < 0:
        raise DomainError("argument must be nonnegative")
    if x == 0:
        return 1 / (8 * mp.pi)
    return (2 * mp.e ** (-x) - 2 * mp.sqrt(mp.pi * x) * mp.erfc(mp.sqrt(x))) / (16 * mp.pi)


def beta_fn_quadrature(x, cfg: NumericConfig | None = None):
    """Direct adaptive quadrature of the defining integral (oracle for beta_fn)."""
    cfg = cfg or NumericConfig()
    x = mp.mpf(x)
    if x < 0:
        raise DomainError("argument must be nonnegative")
    with mp.workdps(cfg.dps):
        return mp.quad(lambda u: u ** mp.mpf(-1.5) * mp.e ** (-x * u), [1, mp.inf],
                       maxdegree=cfg.quad_nodes) / (16 * mp.pi)


def completion_term(mu: int, tau, lmax=None):
    """v^(-1/2) sum over l = mu mod 2 of beta(pi l^2 v) q^(-l^2/4); the
    nonholomorphic completion component attached to the class numbers."""
    tau = _mpc(tau)
    v = mp.im(tau)
    total = mp.mpc(0)
    l = mu
    eps = mp.mpf(10) ** (-mp.mp.dps - 2)
    while not (l > 2 and mp.e ** (-mp.pi * l * l * v / 2) < eps):
        # beta(pi l^2 v) q^(-l^2/4) decays like e^(-pi l^2 v / 2)
        term = beta_fn(mp.pi * l * l * v) * _e(-l * l / mp.mpf(4) * tau)
        total += term if l == 0 else 2 * term  # +-l coincide at z = 0
        l += 2
        if lmax and l > lmax:
            break
    return total / mp.sqrt(v)


def _theta_line_value(mu: int, t):
    """theta_mu(i t, 0) for real t > 0, by the convergent side of the modular
    inversion: direct sum for t >= 1, inverted sum (prefactor (2t)^(-1/2))
    for t < 1."""
    t = mp.mpf(t)
    if t >= 1:
        total = mp.mpf(0)
        r = mu
        while r * r * t / 2 < mp.mp.dps * 3 + 8:
            total += (2 if r else 1) * mp.e ** (-2 * mp.pi * t * r * r / 4)
            r += 2
        return total
    inv = mp.mpf(0)
    sign = -1 if mu == 1 else 1
    k = 0
    while k * k / (2 * t) < mp.mp.dps * 3 + 8:
        inv += (2 if k else 1) * (sign**k) * mp.e ** (-mp.pi * k * k / (2 * t))
        k += 1
    return inv / mp.sqrt(2 * t)


class PeriodEvaluator:
    """P(tau, z) for the weight-2 index-1 class-number series, via the two
    component integrals along the ray (0, i inf); integral data is cached per
    tau at the active precision."""

    def __init__(self, cfg: NumericConfig | None = None):
        self.cfg = cfg or NumericConfig()
        self._cache: dict = {}

    def component_integral(self, mu: int, tau):
        """int_0^{i inf} (tau + w)^(-3/2) theta_mu(w, 0) dw, split at w = i
        with the theta inversion taming the w -> 0 endpoint."""
        cfg = self.cfg
        tau = _mpc(tau)
        key = (mu, mp.nstr(tau, mp.mp.dps - 3), mp.mp.dps, cfg.quad_nodes)
        if key in self._cache:
            return self._cache[key]
        p32 = mp.mpf(-1.5)

        def theta_rest(t):  # theta - its limit 1, exponentially small for t >= 1
            return _theta_line_value(0, t) - 1

        if mu == 0:
            upper = 2 / mp.sqrt(tau + 1j) + 1j * mp.quad(
                lambda t: (tau + 1j * t) ** p32 * theta_rest(t), [1, mp.inf],
                maxdegree=cfg.quad_nodes)
        else:
            upper = 1j * mp.quad(
                lambda t: (tau + 1j * t) ** p32 * _theta_line_value(1, t), [1, mp.inf],
                maxdegree=cfg.quad_nodes)
        # lower piece via t = u^2 and the inverted theta sum: the integrand
        # (tau + i u^2)^(-3/2) (1 + rho_mu(u^2)) is smooth on [0, 1]
        sign = -1 if mu == 1 else 1

        def rho(t):
            s, k = mp.mpf(0), 1
            while k * k / (2 * t) < mp.mp.dps * 3 + 8:
                s += 2 * (sign**k) * mp.e ** (-mp.pi * k * k / (2 * t))
                k += 1
            return s

        lower = 1j * mp.sqrt(2) * mp.quad(
            lambda u: (tau + 1j * u * u) ** p32 * (1 + rho(u * u)) if u > 0 else tau**p32,
            [0, 1], maxdegree=cfg.quad_nodes)
        val = upper + lower
        self._cache[key] = val
        return val

    def __call__(self, tau, z):
        with mp.workdps(self.cfg.dps):
            tau, z = _mpc(tau), _mpc(z)
            total = pairwise_sum(
                self.component_integral(mu, tau) * theta_value(mu, tau, z) for mu in (0, 1)
            )
            return -(24 / mp.pi) * (1 + 1j) / 16 * total


def eichler_theta_integral(mu: int, tau, cfg: NumericConfig | None = None):
    """Both sides of the completion identity at tau: the beta series
    v^(-1/2) sum beta(pi l^2 v) q^(-l^2/4) and the ray integral
    (1+i)/(16 pi) int_{-conj(tau)}^{i inf} (t + tau)^(-3/2) theta_mu(t, 0) dt;
    returns (series_side, integral_side)."""
    cfg = cfg or NumericConfig()
    with mp.workdps(cfg.dps):
        tau = _mpc(tau)
        u, v = mp.re(tau), mp.im(tau)
        series_side = completion_term(mu, tau)

        # the +-r terms coincide at z = 0, so just double nonzero r
        def theta_ray(s):
            t = mp.mpc(-u, v + s)
            total = mp.mpc(0)
            r = mu
            while r * r * (v + s) / 2 < mp.mp.dps * 3 + 8:
                total += (2 if r else 1) * _e(r * r / mp.mpf(4) * t)
                r += 2
            return total

        p32 = mp.mpf(-1.5)
        if mu == 0:
            main = 2 * (2j * v) ** mp.mpf(-0.5)
            rest = 1j * mp.quad(lambda s: (1j * (2 * v + s)) ** p32 * (theta_ray(s) - 1),
                                [0, mp.inf], maxdegree=cfg.quad_nodes)
            integral = main + rest
        else:
            integral = 1j * mp.quad(lambda s: (1j * (2 * v + s)) ** p32 * theta_ray(s),
                                    [0, mp.inf], maxdegree=cfg.quad_nodes)
        integral_side = (1 + 1j) / (16 * mp.pi) * integral
        return series_side, integral_side


# ---------------------------------------------------------------------------
# The completed weight-2 index-1 invariant function


def phi_value(tau, z, cfg: NumericConfig | None = None, holomorphic_only=False):
    """F_0 theta_0 + F_1 theta_1 with F_mu the class-number component plus
    twice its nonholomorphic completion term; with holomorphic_only the
    completion is dropped (which destroys the inversion invariance).

    The factor 2 on the completion is forced: with it the inversion defect
    vanishes at working precision, without it exactly half the uncompleted
    defect survives.  The same factor is visible classically: at 4 tau the
    two components must sum to the completed weight-3/2 class-number series,
    whose completion is twice the sum of the two printed component terms."""
    cfg = cfg or NumericConfig()
    with mp.workdps(cfg.dps):
        tau, z = _mpc(tau), _mpc(z)
        total = mp.mpc(0)
        for mu in (0, 1):
            h = h_mu_series(mu, cfg.qmax)
            hval, _ = eval_expansion(h, EvalPoint(complex(tau), 0j), cfg)
            fmu = hval if holomorphic_only else hval + 2 * completion_term(mu, tau)
            total += fmu * theta_value(mu, tau, z)
        return total


# ---------------------------------------------------------------------------
# Verification checks


def _as_fn(expansion, cfg):
    def fn(tau, z):
        val, _ = eval_expansion(expansion, EvalPoint(complex(tau), complex(z)), cfg)
        return val

    return fn


def check_transformation_law(cfg: NumericConfig | None = None, points=DEFAULT_POINTS) -> dict:
    """| (E|T) - E - P | at the configured points."""
    cfg = cfg or NumericConfig()
    with mp.workdps(cfg.dps):
        e21 = e21_expansion(cfg.qmax)
        f = _as_fn(e21, cfg)
        fT = slash(f, generator("T"), 2, 1)
        P = PeriodEvaluator(cfg)
        errs = []
        for pt in points:
            tau, z = _mpc(pt.tau), _mpc(pt.z)
            errs.append(abs(fT(tau, z) - f(tau, z) - P(tau, z)))
        return {"check": "transformation_law", "max_abs_error": float(max(errs)),
                "points": len(points)}


def check_period_relations(cfg: NumericConfig | None = None, points=DEFAULT_POINTS) -> dict:
    """|sum_{j<=3} P|T^j| and |sum_{j<=5} P|U^j| at the configured points."""
    cfg = cfg or NumericConfig()
    with mp.workdps(cfg.dps):
        P = PeriodEvaluator(cfg)
        errs = {"T": [], "U": []}
        for name, order in (("T", 4), ("U", 6)):
            g = generator(name)
            for pt in points:
                tau, z = _mpc(pt.tau), _mpc(pt.z)
                vals = [slash(P, power(g, j), 2, 1)(tau, z) for j in range(order)]
                errs[name].append(abs(pairwise_sum(vals)))
        return {
            "check": "period_relations",
            "points": len(points),
            "max_abs_error_T": float(max(errs["T"])),
            "max_abs_error_U": float(max(errs["U"])),
            "max_abs_error": float(max(max(errs["T"]), max(errs["U"]))),
        }


def period_relation_negative_control(cfg: NumericConfig | None = None) -> float:
    """The four-term sum applied to the constant 1 (not a period function)."""
    cfg = cfg or NumericConfig()
    with mp.workdps(cfg.dps):
        one = lambda tau, z: mp.mpc(1)
        tau, z = _mpc(DEFAULT_POINTS[0].tau), _mpc(DEFAULT_POINTS[0].z)
        T = generator("T")
        vals = [slash(one, power(T, j), 2, 1)(tau, z) for j in range(4)]
        return float(abs(pairwise_sum(vals)))


def check_tildeT_action(p: int = 2, cfg: NumericConfig | None = None, points=None) -> dict:
    """Relative error of p^(-2) P|tilde(p) against (p+1) P at two points."""
    cfg = cfg or NumericConfig()
    points = points or (EvalPoint(complex(0, 1), complex(0.1, 0.1)),
                        EvalPoint(complex(0, 1.5), 0j))
    with mp.workdps(cfg.dps):
        P = PeriodEvaluator(cfg)
        acted = slash_formal_sum(P, tilde_T(p), 2, 1)
        rel = []
        for pt in points:
            tau, z = _mpc(pt.tau), _mpc(pt.z)
            lhs = acted(tau, z) / p**2
            ref = P(tau, z)
            rel.append(abs(lhs - (p + 1) * ref) / abs(ref))
        return {"check": "transfer_action", "p": p, "points": len(points),
                "max_rel_error": float(max(rel))}


def check_theorem1(n: int, cfg: NumericConfig | None = None, points=None) -> dict:
    """Index-raising transfer identity: the T-obstruction of E|V_n equals
    n^(k/2-1) (P composed with the dilation (tau, z) -> (tau, sqrt(n) z))
    slashed by tilde_V(n) at index m*n.

    The scaling element acts as the pure point substitution and the transfer
    slash carries the raised index; this reading is pinned numerically (the
    identity holds to working precision with it and fails by O(1) under the
    normalized-matrix or index-m readings).  At k = 2 the n^(k/2-1) prefactor
    is 1, so the k-dependence of the outer power is not testable here."""
    cfg = cfg or NumericConfig()
    points = points or (EvalPoint(complex(0, 1), complex(0.1, 0)),
                        EvalPoint(complex(0, 1.2), complex(0.05, 0)))
    k = 2
    with mp.workdps(cfg.dps):
        e21 = e21_expansion(cfg.qmax)
        f = _as_fn(e21, cfg)

        def f_V(tau, z):  # n^(k-1) sum_{ad=n, b mod d} d^(-k) f((a tau + b)/d, a z)
            tau, z = _mpc(tau), _mpc(z)
            parts = []
            for a in range(1, n + 1):
                if n % a:
                    continue
                d = n // a
                for b in range(d):
                    parts.append(mp.mpf(d) ** (-k) * f((a * tau + b) / d, a * z))
            return mp.mpf(n) ** (k - 1) * pairwise_sum(parts)

        fVT = slash(f_V, generator("T"), k, n)  # index m*n
        P = PeriodEvaluator(cfg)

        def P_scaled(tau, z):
            return P(tau, mp.sqrt(n) * z)

        rhs = slash_formal_sum(P_scaled, tilde_V(n), k, n)
        errs = []
        for pt in points:
            tau, z = _mpc(pt.tau), _mpc(pt.z)
            lhs = fVT(tau, z) - f_V(tau, z)
            errs.append(abs(lhs - mp.mpf(n) ** (mp.mpf(k) / 2 - 1) * rhs(tau, z)))
        return {"check": "index_raising_transfer", "n": n, "max_abs_error": float(max(errs))}


def check_phi_invariance(cfg: NumericConfig | None = None, points=None) -> dict:
    """Invariance of the completed function under the inversion element, plus
    the manifest shear/translation invariances and the negative control with
    the completion dropped."""
    cfg = cfg or NumericConfig()
    points = points or (EvalPoint(complex(0, 1), complex(0.2, 0)),) + DEFAULT_POINTS[1:]
    with mp.workdps(cfg.dps):
        phi = lambda tau, z: phi_value(tau, z, cfg)
        out = {"check": "completed_invariance"}
        for name in ("T", "S", "I1"):
            g = generator(name)
            acted = slash(phi, g, 2, 1)
            errs = [abs(acted(_mpc(pt.tau), _mpc(pt.z)) - phi(_mpc(pt.tau), _mpc(pt.z)))
                    for pt in points]
            out[f"max_abs_error_{name}"] = float(max(errs))
        hol = lambda tau, z: phi_value(tau, z, cfg, holomorphic_only=True)
        acted = slash(hol, generator("T"), 2, 1)
        pt = points[0]
        out["holomorphic_only_T_defect"] = float(
            abs(acted(_mpc(pt.tau), _mpc(pt.z)) - hol(_mpc(pt.tau), _mpc(pt.z))))
        out["max_abs_error"] = max(out["max_abs_error_T"], out["max_abs_error_S"],
                                   out["max_abs_error_I1"])
        return out


def check_extended_relation_readings(cfg: NumericConfig | None = None, points=DEFAULT_POINTS) -> dict:
    """The extended relation P = P|g is evaluated for both candidate readings
    of the extra element, [-I, (1, 0)] and [I, (1, 0)]; both residuals are
    reported without choosing between them."""
    cfg = cfg or NumericConfig()
    with mp.workdps(cfg.dps):
        P = PeriodEvaluator(cfg)
        out = {"check": "extended_relation_readings"}
        for name, g in (("minus_I_shift", minus_identity_shift()), ("I2", generator("I2"))):
            acted = slash(P, g, 2, 1)
            errs = [abs(acted(_mpc(pt.tau), _mpc(pt.z)) - P(_mpc(pt.tau), _mpc(pt.z)))
                    for pt in points]
            out[f"max_abs_error_{name}"] = float(max(errs))
        out["max_abs_error"] = max(out["max_abs_error_minus_I_shift"], out["max_abs_error_I2"])
        return out


def check_cocycle(cfg: NumericConfig | None = None, trials: int = 100, seed: int = 23) -> dict:
    """Cocycle identity j(g1 g2) = j(g1, g2 pt) j(g2, pt) on random integral
    elements and on normalized determinant-ell elements, phases included.

    Elements of determinant ell > 1 compose inside the ambient triple group
    only after the 1/sqrt(ell) normalization, so the composite here is formed
    on normalized floating triples (matrix, lattice, phase) with the
    determinant cocycle; on determinant-1 data this coincides with the exact
    composition law."""
    import random as _random

    cfg = cfg or NumericConfig()
    rng = _random.Random(seed)
    pts = [(_mpc(p.tau), _mpc(p.z)) for p in DEFAULT_POINTS]
    from .jacobi_group import compose

    def to_float(g: JacobiGroupElement):
        det = g.det
        s = mp.sqrt(mp.mpf(det.numerator) / det.denominator)
        mat = tuple(mp.mpf(v.numerator) / v.denominator / s for v in g.mat)
        trans = tuple(mp.mpf(v.numerator) / v.denominator for v in g.trans)
        return (mat, trans, mp.mpf(g.phase.numerator) / g.phase.denominator)

    def compose_float(t1, t2):
        (a1, b1, c1, d1), (l1, m1), p1 = t1
        (a2, b2, c2, d2), (l2, m2), p2 = t2
        mat = (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2)
        u, v = l1 * a2 + m1 * c2, l1 * b2 + m1 * d2
        return (mat, (u + l2, v + m2), p1 + p2 + (u * m2 - v * l2))

    def jfactor(t, k, m, tau, z):
        (a, b, c, d), (lam, mu), phase = t
        den = c * tau + d
        w = z + lam * tau + mu
        return _e(m * phase) * den ** (-mp.mpf(k)) * _e(
            m * (lam * lam * tau + 2 * lam * z + lam * mu - c * w * w / den))

    def transformed(t, tau, z):
        (a, b, c, d), (lam, mu), _ = t
        den = c * tau + d
        return (a * tau + b) / den, (z + lam * tau + mu) / den

    def rand_int_element():
        g = generator("E")
        for _ in range(rng.randint(1, 6)):
            g = compose(g, generator(rng.choice(["S", "T", "I1", "I2"])))
        return g

    def rand_det_ell_element():
        ell = rng.choice([1, 2, 3, 4])
        a = rng.choice([d for d in range(1, ell + 1) if ell % d == 0])
        return JacobiGroupElement.make(((a, rng.randint(-2, 2)), (0, ell // a)),
                                       (rng.randint(-2, 2), rng.randint(-2, 2)))

    with mp.workdps(cfg.dps):
        worst = mp.mpf(0)
        for _ in range(trials):
            g1, g2 = rand_int_element(), rand_int_element()
            if rng.random() < 0.5:
                g2 = rand_det_ell_element()
            t1, t2 = to_float(g1), to_float(g2)
            t12 = compose_float(t1, t2)
            for tau, z in pts:
                tt, zz = transformed(t2, tau, z)
                lhs = jfactor(t1, 2, 1, tt, zz) * jfactor(t2, 2, 1, tau, z)
                rhs = jfactor(t12, 2, 1, tau, z)
                worst = max(worst, abs(lhs - rhs))
        return {"check": "cocycle", "max_abs_error": float(worst), "trials": trials}


def hecke_slash_sum_value(n: int, point: EvalPoint, cfg: NumericConfig | None = None):
    """Direct evaluation of the index-preserving Hecke sum on the weight-2
    index-1 expansion: n^(k-4) sum over the upper-triangular representatives
    and lattice of the slashed series (the numeric side of the oracle pair)."""
    cfg = cfg or NumericConfig()
    k = 2
    with mp.workdps(cfg.dps):
        # lattice terms shift z by X tau, so the zeta-direction tail decays
        # slowly; a longer expansion keeps the certified bound below tol
        f = _as_fn(e21_expansion(max(cfg.qmax, 80 * n * n)), cfg)
        tau, z = _mpc(point.tau), _mpc(point.z)
        from .arith import divisors, gcd3, is_square

        parts = []
        for a in divisors(n * n):
            d = n * n // a
            for b in range(d):
                if not is_square(gcd3(a, b, d)):
                    continue
                for x in range(n):
                    for y in range(n):
                        g = JacobiGroupElement.make(((a, b), (0, d)), (x, y))
                        parts.append(slash(f, g, k, 1)(tau, z))
        return mp.mpf(n) ** (k - 4) * pairwise_sum(parts)
