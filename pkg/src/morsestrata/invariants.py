"""Euler characteristic, Morse polynomial and the Morse / Morse-Smale inequalities."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import MissingStratumData
from .program import LabelSpec, SurfaceSignature


@dataclass(frozen=True)
class PoincarePolynomial:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = list(self.coefficients)
        if any(c < 0 for c in coeffs):
            raise ValueError("Poincare coefficients must be non-negative")
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def one(cls):
        return cls((1,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1  # -1 for the zero polynomial

    def __call__(self, t):
        return sum(c * t**j for j, c in enumerate(self.coefficients))

    def __getitem__(self, j: int) -> int:
        return self.coefficients[j] if 0 <= j < len(self.coefficients) else 0

    def __add__(self, other):
        n = max(len(self.coefficients), len(other.coefficients))
        return PoincarePolynomial(tuple(self[j] + other[j] for j in range(n)))

    def shift(self, k: int) -> "PoincarePolynomial":
        return PoincarePolynomial((0,) * k + self.coefficients)

    def __str__(self):
        terms = [f"{c}*t^{j}" for j, c in enumerate(self.coefficients) if c]
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> str:
        return json.dumps(list(self.coefficients))


@dataclass
class StratumHomotopyPlugin:
    """Poincare polynomials of the stratum retracts, keyed by class id.

    Only two sources exist: ``contractible()`` assumes ``P = 1`` for every
    stratum (an assumption, not a computed fact) and ``from_file`` reads a
    user-supplied table.
    """

    table: dict[str, tuple[int, PoincarePolynomial]] = field(default_factory=dict)
    assume_contractible: bool = False

    @classmethod
    def contractible(cls):
        return cls({}, True)

    @classmethod
    def from_file(cls, path) -> "StratumHomotopyPlugin":
        """JSON object ``{class_id: {"d": int, "poincare": [b0, b1, ...]}}``."""
        doc = json.loads(Path(path).read_text())
        return cls({cid: (int(v["d"]), PoincarePolynomial(tuple(v["poincare"]))) for cid, v in doc.items()})

    def lookup(self, cid: str) -> PoincarePolynomial | None:
        if cid in self.table:
            return self.table[cid][1]
        return PoincarePolynomial.one() if self.assume_contractible else None

    @property
    def label(self) -> str:
        return "assumed contractible strata" if self.assume_contractible else "user-supplied table"


def euler_characteristic(classes, q: int) -> int:
    n1 = sum(1 for c in classes if c.s_value == 1)
    return (-1) ** (q - 1) * n1


def q_polynomial(poset, plugin: StratumHomotopyPlugin) -> PoincarePolynomial:
    missing = [cid for cid in poset.nodes if plugin.lookup(cid) is None]
    if missing:
        raise MissingStratumData(missing)
    total = PoincarePolynomial(())
    for cid in sorted(poset.nodes):
        total = total + plugin.lookup(cid).shift(poset.q - poset.nodes[cid].s_value)
    return total


@dataclass(frozen=True)
class InequalityReport:
    betti: tuple[int, ...]
    q_coefficients: tuple[int, ...]
    morse_smale: tuple[bool, ...]  # verdict per j
    weak_morse: tuple[bool, ...]

    @property
    def passed(self) -> bool:
        return all(self.morse_smale) and all(self.weak_morse)

    def to_dict(self):
        return {
            "betti": list(self.betti),
            "q": list(self.q_coefficients),
            "morse_smale": [{"j": j, "ok": ok} for j, ok in enumerate(self.morse_smale)],
            "weak_morse": [{"j": j, "ok": ok} for j, ok in enumerate(self.weak_morse)],
            "passed": self.passed,
        }


def morse_smale_check(betti, poly: PoincarePolynomial) -> InequalityReport:
    """Alternating partial sums of Betti numbers bounded by those of ``Q``.

    Indices run one past the longest sequence, which makes the last two
    inequalities together the Euler characteristic equality.
    """
    betti = tuple(int(b) for b in betti)
    n = max(len(betti), len(poly.coefficients)) + 1
    b = lambda j: betti[j] if j < len(betti) else 0
    ms, weak = [], []
    lhs = rhs = 0
    for j in range(n):
        lhs = b(j) - lhs
        rhs = poly[j] - rhs
        ms.append(lhs <= rhs)
        weak.append(b(j) <= poly[j])
    return InequalityReport(betti, poly.coefficients, tuple(ms), tuple(weak))


@dataclass(frozen=True)
class VanishingReport:
    q: int
    degree: int
    bound: int  # Betti numbers of the function space vanish from this index on
    ok: bool

    def to_dict(self):
        return dict(self.__dict__)


def dimension_vanishing_check(poly: PoincarePolynomial, q: int) -> VanishingReport:
    return VanishingReport(q, poly.degree, 3 * q + 2, poly.degree <= 3 * q)


def diffeomorphism_homotopy_type(sig: SurfaceSignature, labels: LabelSpec) -> str:
    """Homotopy type of the identity component of the diffeomorphism group
    preserving the fixed points, for a closed surface with ``|N|`` fixed points."""
    n = labels.total_fixed
    chi = sig.euler_char
    if chi == 2 and n == 0:
        return "RP^3"
    if chi == 0 and n == 0:
        return "S^1 x S^1"
    if chi < n:
        return "point"
    if 0 <= chi - n <= 1 and n > 0:
        return "S^1"
    return "unknown"
