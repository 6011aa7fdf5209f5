"""Exact rational intervals and certified finite case analyses of the shift.

A domain interval is split, step by step, along the pre-images of the
partition ``L = [0, 1/3)``, ``M = [1/3, 2/3)``, ``R = [2/3, 1)``.  Splits keep
the half-open convention at every cut, so the branch domains partition the
input exactly and every point of a branch (endpoints included) has the
branch's symbol word.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from cantorexit.surd import QuadraticSurd, compare_to_rational, format_rational, parse_rational

__all__ = [
    "RatInterval",
    "SymbolicBranch",
    "TheoremId",
    "Certificate",
    "CertificateError",
    "clearance_set",
    "iterate_symbolic",
    "verify_domains",
    "verify_far_from_boundary",
    "verify_early_r_hit",
    "certify_peel",
    "PeelClause",
    "FAR_LOWER",
    "BAND_LOWER",
    "BAND_UPPER",
    "FAR_DEPTH",
    "EARLY_R_DEPTH",
]

FAR_LOWER = Fraction(1, 25)
BAND_LOWER = Fraction(1, 50)
BAND_UPPER = Fraction(1, 25)
# number of symbols (steps 0..depth-1) examined by each certified check
FAR_DEPTH = 3
EARLY_R_DEPTH = 6

_PIECES = (
    ("L", Fraction(0), Fraction(1, 3)),
    ("M", Fraction(1, 3), Fraction(2, 3)),
    ("R", Fraction(2, 3), Fraction(1)),
)


@dataclass(frozen=True)
class RatInterval:
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo {self.lo} > hi {self.hi}")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            raise ValueError("a degenerate interval must be closed at both ends")

    @classmethod
    def closed(cls, lo, hi) -> "RatInterval":
        return cls(Fraction(lo), Fraction(hi), True, True)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        """Membership of a rational or a :class:`QuadraticSurd`."""
        if isinstance(x, QuadraticSurd):
            c_lo = compare_to_rational(x, self.lo)
            c_hi = compare_to_rational(x, self.hi)
        else:
            x = Fraction(x)
            c_lo = (x > self.lo) - (x < self.lo)
            c_hi = (x > self.hi) - (x < self.hi)
        left = c_lo > 0 or (c_lo == 0 and self.lo_closed)
        right = c_hi < 0 or (c_hi == 0 and self.hi_closed)
        return left and right

    def issubset(self, other: "RatInterval") -> bool:
        if self.lo < other.lo or (self.lo == other.lo and self.lo_closed and not other.lo_closed):
            return False
        if self.hi > other.hi or (self.hi == other.hi and self.hi_closed and not other.hi_closed):
            return False
        return True

    def intersect_half_open(self, a: Fraction, b: Fraction) -> Optional["RatInterval"]:
        """Intersection with ``[a, b)``, or None if empty."""
        if self.lo >= a:
            lo, lo_c = self.lo, self.lo_closed
        else:
            lo, lo_c = a, True
        if self.hi < b:
            hi, hi_c = self.hi, self.hi_closed
        else:
            hi, hi_c = b, False
        if lo > hi or (lo == hi and not (lo_c and hi_c)):
            return None
        return RatInterval(lo, hi, lo_c, hi_c)

    def affine(self, scale, offset) -> "RatInterval":
        """Image under ``t -> scale * t - offset`` for ``scale > 0``."""
        return RatInterval(self.lo * scale - offset, self.hi * scale - offset, self.lo_closed, self.hi_closed)

    def random_rational(self, rng, denominator: int = 10**6) -> Fraction:
        """A rational point of the interval (interior when it has one)."""
        if self.is_point:
            return self.lo
        t = Fraction(rng.randint(1, denominator - 1), denominator)
        return self.lo + t * self.length

    @property
    def ends(self) -> str:
        return ("[" if self.lo_closed else "(") + ("]" if self.hi_closed else ")")

    def __str__(self):
        return f"{self.ends[0]}{self.lo}, {self.hi}{self.ends[1]}"


def _merge(ivs: Iterable[RatInterval]) -> Fraction:
    return sum((iv.length for iv in ivs), Fraction(0))


def clearance_set(lower, upper=None) -> list[RatInterval]:
    """Components of ``{theta in [0,1] : dist(theta, {k/9}) >= lower}``.

    With ``upper`` given, the band ``lower <= dist < upper`` instead: two
    pieces around each interior grid point ``k/9`` and one beside 0 and 1.
    ``lower == upper`` gives the empty band.
    """
    lower = Fraction(lower)
    if upper is None:
        if not 0 < lower < Fraction(1, 18):
            raise ValueError(f"lower must lie in (0, 1/18), got {lower}; larger values leave no components")
        return [RatInterval(Fraction(k, 9) + lower, Fraction(k + 1, 9) - lower) for k in range(9)]
    upper = Fraction(upper)
    if not 0 < lower <= upper:
        raise ValueError(f"need 0 < lower <= upper, got {lower}, {upper}")
    if upper > Fraction(1, 18):
        raise ValueError(f"upper must be at most 1/18, got {upper}; neighbourhoods would overlap")
    if lower == upper:
        return []
    out = []
    for k in range(10):
        p = Fraction(k, 9)
        if k > 0:
            out.append(RatInterval(p - upper, p - lower, False, True))
        if k < 9:
            out.append(RatInterval(p + lower, p + upper, True, False))
    return out


@dataclass(frozen=True)
class SymbolicBranch:
    """``domain`` on which ``theta -> 3^n theta - offset`` equals ``tau^n`` and symbols are fixed."""

    domain: RatInterval
    scale: int
    offset: int
    symbols: str
    component: int = 0

    @property
    def depth(self) -> int:
        return len(self.symbols)

    @property
    def image(self) -> RatInterval:
        return self.domain.affine(self.scale, self.offset)

    def refine(self) -> list["SymbolicBranch"]:
        img = self.image
        if img.hi > 1 or (img.hi == 1 and img.hi_closed) or img.lo < 0:
            raise ValueError(f"image {img} leaves [0, 1)")
        out = []
        for digit, (sym, a, b) in enumerate(_PIECES):
            piece = img.intersect_half_open(a, b)
            if piece is None:
                continue
            dom = RatInterval(
                (piece.lo + self.offset) / self.scale,
                (piece.hi + self.offset) / self.scale,
                piece.lo_closed,
                piece.hi_closed,
            )
            out.append(
                SymbolicBranch(dom, 3 * self.scale, 3 * self.offset + digit, self.symbols + sym, self.component)
            )
        return out

    def line(self) -> str:
        d = self.domain
        return " ".join(
            (format_rational(d.lo), format_rational(d.hi), str(self.scale), format_rational(self.offset),
             self.symbols or "-", d.ends)
        )


def iterate_symbolic(domain: RatInterval, depth: int, component: int = 0) -> list[SymbolicBranch]:
    """Branches of ``domain`` whose first ``depth`` symbols are constant."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if domain.lo < 0 or domain.hi > 1 or (domain.hi == 1 and domain.hi_closed):
        raise ValueError(f"domain {domain} is not inside [0, 1)")
    branches = [SymbolicBranch(domain, 1, 0, "", component)]
    for _ in range(depth):
        branches = [child for b in branches for child in b.refine()]
    return branches


class TheoremId(enum.Enum):
    FAR_FROM_BOUNDARY = "FarFromBoundary"
    EARLY_R_HIT = "EarlyRHit"
    CUSTOM = "Custom"


_CONDITIONS = {
    TheoremId.FAR_FROM_BOUNDARY: "M among symbols 0..2 (index n <= 2, i.e. exit <= 3)",
    TheoremId.EARLY_R_HIT: "M among symbols 0..4 or R among symbols 0..5",
    TheoremId.CUSTOM: "caller supplied predicate",
}


def far_condition(symbols: str) -> bool:
    return "M" in symbols[:3]


def early_r_condition(symbols: str) -> bool:
    return "M" in symbols[:5] or "R" in symbols[:6]


class CertificateError(ValueError):
    """Malformed certificate text."""


@dataclass
class Certificate:
    theorem_id: TheoremId
    target: list[RatInterval]
    branches: list[SymbolicBranch]
    cover_checked: bool
    conclusion_checked: bool
    depth: int
    lower: Optional[Fraction] = None
    upper: Optional[Fraction] = None
    counterexample: Optional[SymbolicBranch] = None
    degenerate: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.cover_checked and self.conclusion_checked

    def branch_containing(self, x) -> Optional[SymbolicBranch]:
        for b in self.branches:
            if b.domain.contains(x):
                return b
        return None

    def to_text(self) -> str:
        opt = lambda r: "-" if r is None else format_rational(r)  # noqa: E731
        lines = [
            f"THEOREM {self.theorem_id.value}",
            f"CONDITION {_CONDITIONS[self.theorem_id]}",
            f"TARGET lower={opt(self.lower)} upper={opt(self.upper)} components={len(self.target)} "
            f"depth={self.depth} branches={len(self.branches)}",
            "# lo hi scale offset symbols ends",
        ]
        lines.extend(b.line() for b in self.branches)
        if self.degenerate:
            lines.append("DEGENERATE empty target")
        if self.counterexample is not None:
            lines.append("COUNTEREXAMPLE " + self.counterexample.line())
        lines.append("COVER OK" if self.cover_checked else "COVER FAIL")
        lines.append("CONCLUSION OK" if self.conclusion_checked else "CONCLUSION FAIL")
        return "\n".join(lines) + "\n"

    @staticmethod
    def parse_branches(text: str) -> list[SymbolicBranch]:
        """Branch lines of a serialized certificate (round-trip helper)."""
        out = []
        for raw in text.splitlines():
            parts = raw.split()
            if not parts or parts[0].isupper() or raw.startswith("#"):
                continue
            if len(parts) != 6:
                raise CertificateError(f"bad branch line: {raw!r}")
            lo, hi, scale, offset, symbols, ends = parts
            if len(ends) != 2 or ends[0] not in "[(" or ends[1] not in "])":
                raise CertificateError(f"bad interval ends: {ends!r}")
            dom = RatInterval(parse_rational(lo), parse_rational(hi), ends[0] == "[", ends[1] == "]")
            off = parse_rational(offset)
            if off.denominator != 1:
                raise CertificateError(f"non-integer offset {offset}")
            out.append(SymbolicBranch(dom, int(scale), int(off), "" if symbols == "-" else symbols))
        return out


def _cover_ok(target: Sequence[RatInterval], branches: Sequence[SymbolicBranch]) -> bool:
    by_comp: dict[int, list[SymbolicBranch]] = {}
    for b in branches:
        by_comp.setdefault(b.component, []).append(b)
    if set(by_comp) != set(range(len(target))):
        return False
    for i, comp in enumerate(target):
        bs = sorted(by_comp[i], key=lambda b: (b.domain.lo, not b.domain.lo_closed))
        first, last = bs[0].domain, bs[-1].domain
        if (first.lo, first.lo_closed) != (comp.lo, comp.lo_closed):
            return False
        if (last.hi, last.hi_closed) != (comp.hi, comp.hi_closed):
            return False
        for p, q in zip(bs, bs[1:]):
            # adjacent with exactly one of the shared endpoints included
            if p.domain.hi != q.domain.lo or p.domain.hi_closed == q.domain.lo_closed:
                return False
        if _merge(b.domain for b in bs) != comp.length:
            return False
    # components themselves must be disjoint
    ordered = sorted(target, key=lambda iv: (iv.lo, not iv.lo_closed))
    for p, q in zip(ordered, ordered[1:]):
        if p.hi > q.lo or (p.hi == q.lo and p.hi_closed and q.lo_closed):
            return False
    return True


def verify_domains(
    target: Sequence[RatInterval],
    depth: int,
    predicate: Callable[[str], bool],
    theorem_id: TheoremId = TheoremId.CUSTOM,
    lower=None,
    upper=None,
) -> Certificate:
    branches: list[SymbolicBranch] = []
    for i, comp in enumerate(target):
        branches.extend(iterate_symbolic(comp, depth, component=i))
    branches.sort(key=lambda b: (b.domain.lo, not b.domain.lo_closed))
    bad = next((b for b in branches if not predicate(b.symbols)), None)
    degenerate = not target
    cert = Certificate(
        theorem_id=theorem_id,
        target=list(target),
        branches=branches,
        cover_checked=degenerate or _cover_ok(target, branches),
        conclusion_checked=bad is None,
        depth=depth,
        lower=None if lower is None else Fraction(lower),
        upper=None if upper is None else Fraction(upper),
        counterexample=bad,
        degenerate=degenerate,
    )
    return cert


def verify_far_from_boundary(lower=FAR_LOWER) -> Certificate:
    """Every point with level-2 clearance ``>= lower`` meets M within symbols 0..2."""
    return verify_domains(
        clearance_set(lower), FAR_DEPTH, far_condition, TheoremId.FAR_FROM_BOUNDARY, lower=lower
    )


def verify_early_r_hit(lower=BAND_LOWER, upper=BAND_UPPER) -> Certificate:
    """Every point of the clearance band meets M by symbol 4 or R by symbol 5."""
    return verify_domains(
        clearance_set(lower, upper), EARLY_R_DEPTH, early_r_condition, TheoremId.EARLY_R_HIT,
        lower=lower, upper=upper,
    )


@dataclass(frozen=True)
class PeelClause:
    name: str
    domain: RatInterval
    steps: tuple[tuple[int, RatInterval], ...]  # (step n, required range of theta_n)
    excluded: tuple[Fraction, ...]  # boundary points where the closed statement fails
    certified: bool


def _peel_check(name, domain: RatInterval, steps) -> PeelClause:
    ok = True
    for n, goal in steps:
        for b in iterate_symbolic(domain, n):
            if not b.image.issubset(goal):
                ok = False
    return PeelClause(name, domain, tuple(steps), (), ok)


def certify_peel() -> list[PeelClause]:
    """The four near-endpoint peeling facts as interval statements.

    The closed domains of clauses (i), (iii), (iv) each contain one rational
    endpoint that lands exactly on a partition boundary (1/9 -> 1/3,
    2/9 -> 2/3, 8/9 -> 2/3).  Those points are listed in ``excluded`` and the
    clause is certified on the remaining half-open domain, which contains
    every irrational point of the closed one.
    """
    F = Fraction
    half_open = lambda a, b: RatInterval(F(a), F(b), True, False)  # noqa: E731
    unit = half_open(0, 1)
    clauses = [
        ("i", half_open(0, F(1, 9)), [(1, half_open(0, F(1, 3))), (2, unit)], (F(1, 9),)),
        ("ii", half_open(F(8, 9), 1), [(1, half_open(F(2, 3), 1)), (2, unit)], ()),
        ("iii", half_open(F(1, 9), F(2, 9)), [(1, half_open(F(1, 3), F(2, 3)))], (F(2, 9),)),
        ("iv", half_open(F(7, 9), F(8, 9)), [(1, half_open(F(1, 3), F(2, 3)))], (F(8, 9),)),
    ]
    out = []
    for name, dom, steps, excluded in clauses:
        c = _peel_check(name, dom, steps)
        out.append(PeelClause(c.name, c.domain, c.steps, excluded, c.certified))
    return out
