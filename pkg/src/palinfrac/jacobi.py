"""Eventually periodic coefficient sequences and their palindrome structure.

A coefficient stream is a sequence of pairs (a_n, b_n) with a_n > 0.  We
model eventually periodic streams as a finite preperiodic block followed by
an infinitely repeated periodic block.  The division between the two blocks
is part of the representation, not of the stream: the same stream has many
legal representations and we deliberately never minimize the period.

The canonical form used by the verifier requires the preperiodic block to
be nonempty and to end with a pair equal to the last pair of the period;
`normalize_kp` establishes this by appending one full period when needed.

A period is "doubly palindromic with first length ell" when its a-string is
a concatenation of palindromes of lengths ell and p-ell while its b-string
is a concatenation of palindromes of lengths ell+1 and p-ell-1, with both
blocks of both strings nonempty (1 <= ell <= p-2).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import IndexOutOfRange, ParseError
from .exactalg import RationalLike, as_rational


@dataclass(frozen=True)
class JacobiPair:
    """One coefficient pair (a, b) with a > 0."""

    a: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        if self.a <= 0:
            raise ParseError(f"coefficient a must be positive, got {self.a}")


def pair(a: RationalLike, b: RationalLike) -> JacobiPair:
    """Convenience constructor accepting ints, Fractions, or rational strings."""
    return JacobiPair(as_rational(a), as_rational(b))


@dataclass(frozen=True)
class JacobiSequence:
    """An eventually periodic stream: preperiodic block + repeated period."""

    preperiodic: tuple[JacobiPair, ...]
    periodic: tuple[JacobiPair, ...]

    def __post_init__(self) -> None:
        if len(self.periodic) < 1:
            raise ParseError("periodic part must be nonempty")

    @property
    def k(self) -> int:
        """Length of the preperiodic block."""
        return len(self.preperiodic)

    @property
    def p(self) -> int:
        """Length of one period."""
        return len(self.periodic)

    def pairs(self, n: int) -> list[JacobiPair]:
        """Unroll the first n pairs of the stream."""
        out = list(self.preperiodic[:n])
        i = 0
        while len(out) < n:
            out.append(self.periodic[i % self.p])
            i += 1
        return out

    def is_kp_normalized(self) -> bool:
        """True when the preperiodic block is nonempty and ends with the last periodic pair."""
        return self.k >= 1 and self.preperiodic[-1] == self.periodic[-1]


def sequence(
    preperiodic: Sequence[tuple[RationalLike, RationalLike]],
    periodic: Sequence[tuple[RationalLike, RationalLike]],
) -> JacobiSequence:
    """Build a JacobiSequence from raw (a, b) tuples."""
    return JacobiSequence(
        tuple(pair(a, b) for a, b in preperiodic),
        tuple(pair(a, b) for a, b in periodic),
    )


@dataclass(frozen=True)
class PalindromeSplit:
    """A valid double-palindrome split: period length p and first length ell."""

    p: int
    ell: int

    def __post_init__(self) -> None:
        if not 1 <= self.ell <= self.p - 2:
            raise IndexOutOfRange(
                f"first length must satisfy 1 <= ell <= p-2, got ell={self.ell}, p={self.p}"
            )


def load_sequence(text: str | bytes) -> JacobiSequence:
    """Parse the JSON document format into an exact sequence.

    The document is an object with an optional "preperiodic" and a required
    "periodic" key, each a list of two-element lists whose entries are
    rational strings ("3/2", "-1", "0") or integers.  Floats are rejected:
    exact arithmetic needs exact inputs.

    Raises:
        ParseError: malformed JSON, malformed rationals, nonpositive a
            entries, or an empty periodic part.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object")
    unknown = set(doc) - {"preperiodic", "periodic"}
    if unknown:
        raise ParseError(f"unknown keys: {sorted(unknown)}")
    if "periodic" not in doc:
        raise ParseError('missing required key "periodic"')

    def parse_block(name: str, raw) -> tuple[JacobiPair, ...]:
        if not isinstance(raw, list):
            raise ParseError(f'"{name}" must be a list of [a, b] pairs')
        out = []
        for i, item in enumerate(raw):
            if not isinstance(item, list) or len(item) != 2:
                raise ParseError(f'"{name}"[{i}] must be a two-element list')
            values = []
            for entry in item:
                if isinstance(entry, bool) or isinstance(entry, float):
                    raise ParseError(
                        f'"{name}"[{i}]: entries must be rational strings or integers, got {entry!r}'
                    )
                try:
                    values.append(as_rational(entry))
                except (ValueError, ZeroDivisionError) as exc:
                    raise ParseError(f'"{name}"[{i}]: bad rational {entry!r}') from exc
            out.append(JacobiPair(values[0], values[1]))
        return tuple(out)

    periodic = parse_block("periodic", doc["periodic"])
    if not periodic:
        raise ParseError("periodic part must be nonempty")
    preperiodic = parse_block("preperiodic", doc.get("preperiodic", []))
    return JacobiSequence(preperiodic, periodic)


def dump_sequence(seq: JacobiSequence) -> dict:
    """The JSON-ready document for a sequence (inverse of load_sequence)."""
    return {
        "preperiodic": [[str(q.a), str(q.b)] for q in seq.preperiodic],
        "periodic": [[str(q.a), str(q.b)] for q in seq.periodic],
    }


def normalize_kp(seq: JacobiSequence) -> JacobiSequence:
    """Make the preperiodic block nonempty and end with the last periodic pair.

    If the input already satisfies both conditions it is returned unchanged;
    otherwise exactly one full period is appended to the preperiodic block.
    The represented stream is unchanged either way.  Idempotent.
    """
    if seq.is_kp_normalized():
        return seq
    return JacobiSequence(seq.preperiodic + seq.periodic, seq.periodic)


def double_period(seq: JacobiSequence) -> JacobiSequence:
    """Replace the period by two copies of itself (same stream, 2p-periodic)."""
    return JacobiSequence(seq.preperiodic, seq.periodic + seq.periodic)


def _is_palindrome(values: Sequence[Fraction]) -> bool:
    n = len(values)
    for i in range(n // 2):
        if values[i] != values[n - 1 - i]:
            return False
    return True


def find_palindrome_splits(periodic: Sequence[JacobiPair]) -> list[PalindromeSplit]:
    """All first lengths ell making the period doubly palindromic, ascending.

    ell qualifies when the a-string splits into palindromes of lengths ell
    and p-ell and the b-string splits into palindromes of lengths ell+1 and
    p-ell-1.  Empty for p < 3 since every block must be nonempty.
    """
    p = len(periodic)
    a = [q.a for q in periodic]
    b = [q.b for q in periodic]
    out = []
    for ell in range(1, p - 1):
        if (
            _is_palindrome(a[:ell])
            and _is_palindrome(a[ell:])
            and _is_palindrome(b[: ell + 1])
            and _is_palindrome(b[ell + 1 :])
        ):
            out.append(PalindromeSplit(p, ell))
    return out


def strip(seq: JacobiSequence, count: int) -> JacobiSequence:
    """Remove the first `count` pairs of the stream.

    When the cut lands inside the periodic part, the representation becomes
    purely periodic with a rotated period.
    """
    if count < 0:
        raise IndexOutOfRange(f"strip count must be nonnegative, got {count}")
    if count <= seq.k:
        return JacobiSequence(seq.preperiodic[count:], seq.periodic)
    r = (count - seq.k) % seq.p
    return JacobiSequence((), seq.periodic[r:] + seq.periodic[:r])


def reversed_periodic(periodic: Sequence[JacobiPair]) -> list[JacobiPair]:
    """One period of the index-reversed stream.

    The j-th output pair (1-based) is (a_{p-j}, b_{p-j+1}), reading the a
    index modulo p so that a_0 means a_p.  For p = 1 this degenerates to
    the single pair (a_1, b_1).
    """
    p = len(periodic)
    out = []
    for j in range(1, p + 1):
        a_idx = (p - j) % p or p
        b_idx = p - j + 1
        out.append(JacobiPair(periodic[a_idx - 1].a, periodic[b_idx - 1].b))
    return out
