"""Parameter engine for both constructions.

All dimension arithmetic lives here: output lengths, the MAC degree ``L``,
the correctness and robustness bounds, the key-length ceilings and the
source-budget constraints. Formulas are evaluated with 256-bit mpmath.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction

from .errors import ParameterError
from .field import REDUCTION_POLYNOMIALS
from .precision import ceil_exact, floor_exact, log2_exact, mp, to_fraction, to_mpf

CONSTRUCTIONS = (1, 2)


def output_length(construction: int, xi: int, t: int, lam: int = 0) -> int:
    """Extractor output length ``nu``: ``xi + t`` or ``xi + t + 2*lam``."""
    _check_construction(construction)
    return xi + t + (2 * lam if construction == 2 else 0)


def minimal_mac_length(ell: int, nu: int, lam: int) -> int:
    return -(-ell * nu // lam) + 4


def mac_length(ell: int, nu: int, lam: int) -> int:
    """``ceil(ell*nu/lam) + 4`` rounded up to the next value that is 3 mod 4."""
    base = minimal_mac_length(ell, nu, lam)
    return base + (3 - base) % 4


def params_digest(n: int, m: int, ell: int, nu: int) -> bytes:
    """8-byte binding of the dimensions shared by Gen, Rep and the CRS."""
    return hashlib.sha256(b"fuzex/dims" + struct.pack(">IHHH", n, m, ell, nu)).digest()[:8]


def _check_construction(construction):
    if construction not in CONSTRUCTIONS:
        raise ParameterError(f"construction must be 1 or 2, got {construction!r}")


@dataclass(frozen=True)
class Params:
    """Full parameter record.

    ``t_err`` is the tolerated Hamming distance between enrollment and
    reproduction samples. ``alpha``, ``N``, ``sigma`` and ``eps_prime``
    describe the source and targets; they are optional for pure Gen/Rep use
    but required by :func:`validate` to check the key-length and budget
    constraints.
    """

    construction: int
    n: int
    m: int
    ell: int
    t: int
    xi: int
    nu: int
    t_err: int = 0
    lam: int = 0
    L: int = 0
    alpha: float | None = None
    N: int | None = None
    sigma: float | None = None
    eps_prime: float | None = None
    eta: int = 1
    q_e: int = 0
    q_d: int = 0

    @classmethod
    def build(cls, construction: int, n: int, m: int, ell: int, t: int, xi: int,
              lam: int = 0, **extra) -> Params:
        """Derive ``nu`` and ``L`` from the free parameters."""
        _check_construction(construction)
        if construction == 2 and lam <= 0:
            raise ParameterError("construction 2 needs a MAC field width lam")
        if construction == 1:
            lam = 0
        nu = output_length(construction, xi, t, lam)
        L = mac_length(ell, nu, lam) if construction == 2 else 0
        return cls(construction, n, m, ell, t, xi, nu, lam=lam, L=L, **extra)

    @property
    def digest(self) -> bytes:
        return params_digest(self.n, self.m, self.ell, self.nu)

    @property
    def epsilon(self) -> float:
        """Extractor error budget: ``sigma/(2 ell)`` or ``sigma/(4 ell)``."""
        return float(extractor_epsilon(self))

    def with_(self, **changes) -> Params:
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> Params:
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ParameterError(f"unknown parameter fields: {sorted(unknown)}")
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def extractor_epsilon(params: Params):
    if params.sigma is None:
        raise ParameterError("sigma is required")
    split = 2 if params.construction == 1 else 4
    return to_fraction(params.sigma) / (split * params.ell)


# -- correctness --------------------------------------------------------------


@dataclass(frozen=True)
class CorrectnessTerms:
    miss: float
    collision: float

    @property
    def total(self) -> float:
        return self.miss + self.collision


def _match_probability(n, m, t_err):
    if t_err < 0:
        raise ParameterError("t_err must be non-negative")
    if t_err >= n - m:
        raise ParameterError(f"t_err={t_err} must be below n-m={n - m}")
    ctx = mp()
    return (1 - ctx.mpf(t_err) / (n - m)) ** m


def _miss_term(n, m, t_err, ell):
    q = _match_probability(n, m, t_err)
    return (1 - q) ** ell


def _collision_term(ell, t, construction=1, L=0, lam=0):
    ctx = mp()
    term = ell * ctx.mpf(2) ** (-t)
    if construction == 2:
        term *= L * ctx.mpf(2) ** (-lam)
    return term


def correctness_terms(params: Params, construction: int | None = None) -> CorrectnessTerms:
    construction = construction or params.construction
    _check_construction(construction)
    miss = _miss_term(params.n, params.m, params.t_err, params.ell)
    coll = _collision_term(params.ell, params.t, construction, params.L, params.lam)
    return CorrectnessTerms(float(miss), float(coll))


def correctness_bound(params: Params, construction: int | None = None) -> float:
    """Miss term plus collision term of the correctness inequality."""
    construction = construction or params.construction
    _check_construction(construction)
    miss = _miss_term(params.n, params.m, params.t_err, params.ell)
    coll = _collision_term(params.ell, params.t, construction, params.L, params.lam)
    return float(miss + coll)


def solve_ell(n: int, m: int, t_err: int, t: int, target) -> int | None:
    """Smallest ``ell`` meeting ``target`` with an even miss/collision split.

    The miss term must be at most ``target/2`` and the collision term
    ``ell * 2^-t`` at most ``target/2``. Returns ``None`` when infeasible.
    """
    target = to_mpf(target)
    if not 0 < target < 1:
        raise ParameterError("target must lie in (0, 1)")
    ctx = mp()
    half = target / 2
    q = _match_probability(n, m, t_err)
    if q >= 1:
        ell = 1
    elif q <= 0:
        return None
    else:
        ell = max(1, ceil_exact(ctx.log(half) / ctx.log(1 - q)))
        # guard the closed form against rounding at the boundary
        while ell > 1 and (1 - q) ** (ell - 1) <= half:
            ell -= 1
        while (1 - q) ** ell > half:
            ell += 1
    if _collision_term(ell, t) > half:
        return None
    return ell


def solve_t(ell: int, target, construction: int = 1, lam: int = 0, L: int = 0) -> int:
    """Smallest check length ``t`` with collision term at most ``target/2``."""
    t = 0
    half = to_mpf(target) / 2
    while _collision_term(ell, t, construction, L, lam) > half:
        t += 1
    return t


# -- key length -----------------------------------------------------------------


def key_length_bound(alpha, ell, sigma, t, lam=0, construction=1):
    """Right-hand side of the key-length inequality, before flooring."""
    _check_construction(construction)
    split = 2 if construction == 1 else 4
    value = to_mpf(alpha) + 2 - 2 * log2_exact(Fraction(split * ell) / to_fraction(sigma)) - t
    if construction == 2:
        value -= 2 * lam
    return value


def max_key_length(alpha, ell, sigma, t, lam=0, construction=1) -> int:
    """Floor of :func:`key_length_bound`, clamped at zero."""
    return max(0, floor_exact(key_length_bound(alpha, ell, sigma, t, lam, construction)))


def robustness_bound(params: Params) -> float:
    """``(q_d+q_e) ell eps + q_d 2^-lam ell (L+1)``."""
    if params.construction != 2:
        raise ParameterError("robustness is defined for construction 2 only")
    ctx = mp()
    eps = to_mpf(extractor_epsilon(params))
    q_e, q_d, ell = params.q_e, params.q_d, params.ell
    value = (q_d + q_e) * ell * eps + q_d * ctx.mpf(2) ** (-params.lam) * ell * (params.L + 1)
    return float(value)


def reusability_bound(params: Params) -> float:
    """Distinguishing advantage bound for an unrevealed key (``sigma``)."""
    if params.sigma is None:
        raise ParameterError("sigma is required")
    return float(params.sigma)


# -- validation -----------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    constraint: str
    lhs: object
    rhs: object
    message: str
    suggestion: dict = field(default_factory=dict)

    def __str__(self):
        return f"{self.constraint}: {self.message}"


def validate(params: Params, construction: int | None = None) -> list[Violation]:
    """Check every constraint; an empty list means the record is consistent."""
    p = params
    c = construction or p.construction
    _check_construction(c)
    out: list[Violation] = []

    def fail(name, lhs, rhs, msg, **suggestion):
        out.append(Violation(name, lhs, rhs, msg, suggestion))

    if min(p.n, p.m, p.ell) < 1 or min(p.t, p.xi, p.t_err) < 0:
        fail("dimensions", None, None, "n, m, ell must be positive; t, xi, t_err non-negative")
        return out
    if p.m > p.n:
        fail("subsample size", p.m, p.n, f"m={p.m} exceeds n={p.n}")
    if p.t_err >= p.n - p.m:
        fail("error tolerance", p.t_err, p.n - p.m, f"t_err={p.t_err} must be < n-m={p.n - p.m}")

    expected_nu = output_length(c, p.xi, p.t, p.lam)
    if p.nu != expected_nu:
        fail("output length", p.nu, expected_nu, f"nu={p.nu} but the construction needs {expected_nu}")

    if c == 2:
        if p.lam not in REDUCTION_POLYNOMIALS:
            fail("field width", p.lam, sorted(REDUCTION_POLYNOMIALS), f"lam={p.lam} is not a supported field")
        else:
            floor_L = minimal_mac_length(p.ell, p.nu, p.lam)
            if p.L < floor_L:
                fail("MAC degree", p.L, floor_L,
                     f"L={p.L} below ceil(ell*nu/lam)+4={floor_L}", L=mac_length(p.ell, p.nu, p.lam))
            if p.L % 4 != 3:
                fixed = p.L + (3 - p.L) % 4
                fail("MAC congruence", p.L % 4, 3,
                     f"L={p.L} is {p.L % 4} mod 4; round up to L={fixed}", L=fixed)

    if p.alpha is not None and p.alpha > p.m:
        fail("entropy", p.alpha, p.m, f"alpha={p.alpha} exceeds the subsample length m={p.m}")

    if p.alpha is not None and p.sigma is not None:
        bound = key_length_bound(p.alpha, p.ell, p.sigma, p.t, p.lam, c)
        if p.xi > bound:
            fail("key length", p.xi, float(bound),
                 f"xi={p.xi} exceeds the key-length bound {float(bound):.3f}",
                 xi=max(0, floor_exact(bound)))

    if p.N is not None:
        if c == 1:
            used = p.ell * p.eta * p.m
            if used >= p.N:
                fail("source budget", used, p.N, f"ell*eta*m={used} must be < N={p.N}")
        else:
            gen = (p.q_e + 1) * p.ell * p.m
            rep = (p.q_e + p.q_d) * p.ell * p.m
            if gen >= p.N:
                fail("source budget", gen, p.N, f"(q_e+1)*ell*m={gen} must be < N={p.N}")
            if rep >= p.N:
                fail("source budget (reproduction)", rep, p.N, f"(q_e+q_d)*ell*m={rep} must be < N={p.N}")

    if p.eps_prime is not None and p.t_err < p.n - p.m:
        if c == 1 or p.lam > 0:
            bound = correctness_bound(p, c)
            if bound > p.eps_prime:
                fail("correctness", bound, p.eps_prime,
                     f"correctness bound {bound:.3e} exceeds eps'={p.eps_prime}")
    return out


def check(params: Params) -> Params:
    """Raise :class:`ParameterError` listing every violated constraint."""
    problems = validate(params)
    if problems:
        raise ParameterError("; ".join(str(v) for v in problems))
    return params


def report(params: Params) -> str:
    """Human-readable summary with constraint margins."""
    p = params
    lines = [f"construction      {p.construction}"]
    for name in ("n", "m", "ell", "t", "t_err", "xi", "nu", "lam", "L", "alpha", "N",
                 "sigma", "eps_prime", "eta", "q_e", "q_d"):
        lines.append(f"{name:<17} {getattr(p, name)}")
    if p.t_err < p.n - p.m:
        terms = correctness_terms(p)
        lines.append(f"miss term         {terms.miss:.6e}")
        lines.append(f"collision term    {terms.collision:.6e}")
        lines.append(f"correctness bound {terms.total:.6e}")
    if p.alpha is not None and p.sigma is not None:
        bound = key_length_bound(p.alpha, p.ell, p.sigma, p.t, p.lam, p.construction)
        lines.append(f"key-length bound  {float(bound):.3f} (margin {float(bound) - p.xi:.3f})")
    if p.N is not None:
        mult = p.eta if p.construction == 1 else max(p.q_e + 1, p.q_e + p.q_d)
        used = mult * p.ell * p.m
        lines.append(f"source budget     {used} of N={p.N} (margin {p.N - used})")
    if p.construction == 2 and p.sigma is not None:
        lines.append(f"robustness delta  {robustness_bound(p):.6e}")
    problems = validate(p)
    lines.append("status            " + ("ok" if not problems else "VIOLATED"))
    for v in problems:
        lines.append(f"  - {v}")
    return "\n".join(lines)

