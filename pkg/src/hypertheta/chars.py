"""Exact combinatorics of half-integer theta characteristics.

A characteristic is a pair of length-g vectors with entries in {0, 1/2},
stored as two g-bit words (bit set <=> entry 1/2).  Everything in this
module is exact integer arithmetic; no floating point.  All values are
immutable and all operations pure, so concurrent use needs no coordination.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

__all__ = [
    "ThetaCharacteristic",
    "FundamentalSystem",
    "generator_char",
    "sum_chars",
    "e_triple",
    "is_azygetic",
    "base_index_set",
    "eta_of_subset",
    "fundamental_system_from_subset",
    "enumerate_fundamental_systems",
    "dedupe_systems",
    "all_characteristics",
    "odd_characteristics",
    "even_characteristics",
]


@dataclass(frozen=True, order=True)
class ThetaCharacteristic:
    """Pair (top, bottom) of {0, 1/2}-vectors encoded as g-bit words."""

    genus: int
    top_bits: int
    bottom_bits: int

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be >= 1")
        mask = (1 << self.genus) - 1
        if self.top_bits & ~mask or self.bottom_bits & ~mask:
            raise ValueError("characteristic bits exceed genus width")
        if self.top_bits < 0 or self.bottom_bits < 0:
            raise ValueError("characteristic bits must be nonnegative")

    @classmethod
    def zero(cls, genus: int) -> "ThetaCharacteristic":
        return cls(genus, 0, 0)

    @classmethod
    def from_halves(cls, top, bottom) -> "ThetaCharacteristic":
        """Build from vectors with entries that are exactly 0 or 1/2."""
        top = list(top)
        bottom = list(bottom)
        if len(top) != len(bottom):
            raise ValueError("top and bottom must have equal length")
        tb = bb = 0
        for i, (t, b) in enumerate(zip(top, bottom)):
            if t not in (0, 0.5):
                raise ValueError(f"top entry {t!r} not in {{0, 1/2}}")
            if b not in (0, 0.5):
                raise ValueError(f"bottom entry {b!r} not in {{0, 1/2}}")
            tb |= (t == 0.5) << i
            bb |= (b == 0.5) << i
        return cls(len(top), tb, bb)

    @property
    def top(self) -> tuple[float, ...]:
        return tuple(0.5 * ((self.top_bits >> i) & 1) for i in range(self.genus))

    @property
    def bottom(self) -> tuple[float, ...]:
        return tuple(0.5 * ((self.bottom_bits >> i) & 1) for i in range(self.genus))

    def __add__(self, other: "ThetaCharacteristic") -> "ThetaCharacteristic":
        # entrywise sum mod 1 is XOR on the bit encoding
        if not isinstance(other, ThetaCharacteristic):
            return NotImplemented
        if other.genus != self.genus:
            raise ValueError("genus mismatch in characteristic sum")
        return ThetaCharacteristic(
            self.genus, self.top_bits ^ other.top_bits, self.bottom_bits ^ other.bottom_bits
        )

    def parity(self) -> int:
        """+1 for an even characteristic, -1 for an odd one.

        Equals (-1)**(4 <top, bottom>); with the bit encoding this is the
        parity of popcount(top & bottom).
        """
        return -1 if (self.top_bits & self.bottom_bits).bit_count() % 2 else 1

    def is_odd(self) -> bool:
        return self.parity() == -1

    def is_even(self) -> bool:
        return self.parity() == 1

    def text(self) -> str:
        """Serialize as 'top|bottom' bit strings, e.g. g=2 '10|10'."""
        t = "".join(str((self.top_bits >> i) & 1) for i in range(self.genus))
        b = "".join(str((self.bottom_bits >> i) & 1) for i in range(self.genus))
        return f"{t}|{b}"

    @classmethod
    def parse(cls, s: str) -> "ThetaCharacteristic":
        parts = s.strip().split("|")
        if len(parts) != 2 or len(parts[0]) != len(parts[1]) or not parts[0]:
            raise ValueError(f"malformed characteristic string {s!r}")
        g = len(parts[0])
        tb = bb = 0
        for i in range(g):
            if parts[0][i] not in "01" or parts[1][i] not in "01":
                raise ValueError(f"malformed characteristic string {s!r}")
            tb |= (parts[0][i] == "1") << i
            bb |= (parts[1][i] == "1") << i
        return cls(g, tb, bb)

    def __repr__(self):
        return f"ThetaCharacteristic({self.genus}, {self.text()!r})"


def generator_char(genus: int, k: int) -> ThetaCharacteristic:
    """The k-th branch-point characteristic, k in 1..2g+2.

    Index 2k-1 has top row e_k/2 and bottom row 1/2 in the first k-1 slots;
    index 2k has top row e_k/2 and bottom row 1/2 in the first k slots.  For
    the odd index with k = g+1 the top position does not exist and the top
    row is zero.  Index 2g+2 is the zero characteristic by convention, so
    that subset sums may range over all of {1, ..., 2g+2}.
    """
    g = genus
    if not 1 <= k <= 2 * g + 2:
        raise ValueError(f"generator index {k} out of range 1..{2 * g + 2}")
    if k == 2 * g + 2:
        return ThetaCharacteristic.zero(g)
    prefix = lambda n: (1 << n) - 1
    if k % 2:  # k = 2j-1, 1 <= j <= g+1
        j = (k + 1) // 2
        top = (1 << (j - 1)) if j <= g else 0
        return ThetaCharacteristic(g, top, prefix(j - 1))
    j = k // 2  # k = 2j, 1 <= j <= g
    return ThetaCharacteristic(g, 1 << (j - 1), prefix(j))


def sum_chars(chars, genus: int | None = None) -> ThetaCharacteristic:
    """Entrywise sum mod 1 of a list of characteristics (empty sum = zero)."""
    chars = list(chars)
    if not chars:
        if genus is None:
            raise ValueError("empty sum needs an explicit genus")
        return ThetaCharacteristic.zero(genus)
    out = chars[0]
    for c in chars[1:]:
        out = out + c
    return out


def e_triple(c1: ThetaCharacteristic, c2: ThetaCharacteristic, c3: ThetaCharacteristic) -> int:
    """e(c1)e(c2)e(c3)e(c1+c2+c3) in {+1, -1}."""
    return c1.parity() * c2.parity() * c3.parity() * (c1 + c2 + c3).parity()


def is_azygetic(c1, c2, c3) -> bool:
    return e_triple(c1, c2, c3) == -1


def base_index_set(genus: int) -> frozenset[int]:
    """The odd index set {1, 3, ..., 2g+1} entering every subset characteristic."""
    return frozenset(range(1, 2 * genus + 2, 2))


def eta_of_subset(subset, genus: int) -> ThetaCharacteristic:
    """Sum of generator characteristics over a subset of {1, ..., 2g+2}."""
    subset = set(subset)
    if not subset <= set(range(1, 2 * genus + 3)):
        raise ValueError(f"subset {sorted(subset)} not inside 1..{2 * genus + 2}")
    return sum_chars([generator_char(genus, k) for k in subset], genus)


@dataclass(frozen=True)
class FundamentalSystem:
    """2g+2 characteristics, g odd then g+2 even, every triplet azygetic."""

    genus: int
    odd_part: tuple[ThetaCharacteristic, ...]
    even_part: tuple[ThetaCharacteristic, ...]
    source_subset: tuple[int, ...]

    def members(self) -> tuple[ThetaCharacteristic, ...]:
        return self.odd_part + self.even_part

    def key(self):
        """Deduplication key: the sorted odd part determines the system."""
        return tuple(sorted(self.odd_part))

    def validate(self) -> None:
        g = self.genus
        if len(self.odd_part) != g or len(self.even_part) != g + 2:
            raise ValueError("fundamental system has wrong part sizes")
        for c in self.odd_part:
            if not c.is_odd():
                raise ValueError(f"odd part member {c.text()} is even")
        for c in self.even_part:
            if not c.is_even():
                raise ValueError(f"even part member {c.text()} is odd")
        for t in itertools.combinations(self.members(), 3):
            if not is_azygetic(*t):
                raise ValueError(
                    "zygetic triplet (%s, %s, %s) in system from subset %s"
                    % (t[0].text(), t[1].text(), t[2].text(), self.source_subset)
                )


def fundamental_system_from_subset(subset, genus: int) -> FundamentalSystem:
    """Fundamental system attached to a g-subset of branch-point indices.

    The k-th odd member is the characteristic of the sub-divisor omitting
    the k-th chosen index; the even members come from enlarging the subset
    by each non-chosen index.  The result is checked against the parity
    and azygosity invariants: a failure here signals a convention bug, not
    bad input.
    """
    g = genus
    subset = tuple(sorted(set(subset)))
    if len(subset) != g:
        raise ValueError(f"need exactly {g} distinct indices, got {subset}")
    if not set(subset) <= set(range(1, 2 * g + 3)):
        raise ValueError(f"subset {subset} not inside 1..{2 * g + 2}")
    u = base_index_set(g)
    odd = tuple(
        eta_of_subset(u.symmetric_difference(set(subset) - {i}), g) for i in subset
    )
    complement = [i for i in range(1, 2 * g + 3) if i not in subset]
    even = tuple(
        eta_of_subset(u.symmetric_difference(set(subset) | {i}), g) for i in complement
    )
    fs = FundamentalSystem(g, odd, even, subset)
    fs.validate()
    return fs


def enumerate_fundamental_systems(genus: int) -> list[FundamentalSystem]:
    """All C(2g+2, g) systems, one per g-subset of {1, ..., 2g+2}."""
    g = genus
    systems = [
        fundamental_system_from_subset(s, g)
        for s in itertools.combinations(range(1, 2 * g + 3), g)
    ]
    assert len(systems) == comb(2 * g + 2, g)
    return systems


def dedupe_systems(systems) -> list[FundamentalSystem]:
    """Keep one system per distinct sorted odd part."""
    seen = {}
    for fs in systems:
        seen.setdefault(fs.key(), fs)
    return list(seen.values())


def all_characteristics(genus: int) -> list[ThetaCharacteristic]:
    g = genus
    return [
        ThetaCharacteristic(g, t, b)
        for t in range(1 << g)
        for b in range(1 << g)
    ]


def odd_characteristics(genus: int) -> list[ThetaCharacteristic]:
    return [c for c in all_characteristics(genus) if c.is_odd()]


def even_characteristics(genus: int) -> list[ThetaCharacteristic]:
    return [c for c in all_characteristics(genus) if c.is_even()]
