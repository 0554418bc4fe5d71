"""Fibonacci Quilt sequence: 1, 2, 3, 4, 5, 7, 9, 12, 16, 21, 28, 37, 49, ...

The sequence starts q1=1, q2=2, q3=3, q4=4 and continues with
q_i = q_{i-3} + q_{i-2} for i >= 5.  Two more identities hold and are
checked by :func:`verify_identities`:

* q_i = q_{i-1} + q_{i-5} for i >= 7
* q_1 + ... + q_n = q_{n+5} - 6

All indices are 1-based everywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass, field

# Terms are kept within signed 64-bit range; generation past this index is
# refused with an explicit error instead of silently growing.
_INT64_MAX = 2**63 - 1


def _max_safe_index() -> int:
    terms = [1, 2, 3, 4]
    while True:
        nxt = terms[-3] + terms[-2]
        if nxt > _INT64_MAX:
            return len(terms)
        terms.append(nxt)


MAX_SAFE_INDEX = _max_safe_index()


@dataclass(frozen=True)
class QuiltSequence:
    """Immutable run of quilt terms q1..q_max_index (1-based access)."""

    terms: tuple[int, ...]

    @property
    def max_index(self) -> int:
        return len(self.terms)

    def value(self, i: int) -> int:
        """Term q_i; raises IndexError outside 1..max_index."""
        if not 1 <= i <= len(self.terms):
            raise IndexError(f"index {i} outside generated range 1..{len(self.terms)}")
        return self.terms[i - 1]

    def index_of_value(self, v: int) -> int | None:
        """Index i with q_i = v, or None if v is not a generated term."""
        lut = _value_to_index(self.terms)
        return lut.get(v)

    def __iter__(self):
        return iter(self.terms)


_lut_cache: dict[tuple[int, ...], dict[int, int]] = {}


def _value_to_index(terms: tuple[int, ...]) -> dict[int, int]:
    lut = _lut_cache.get(terms)
    if lut is None:
        lut = {v: i + 1 for i, v in enumerate(terms)}
        _lut_cache[terms] = lut
    return lut


def generate(max_index: int) -> QuiltSequence:
    """Generate the quilt sequence up to q_max_index.

    The minimal recurrence q_i = q_{i-3} + q_{i-2} is the generator; the
    longer recurrence q_i = q_{i-1} + q_{i-5} is verified separately.
    """
    if max_index < 1:
        raise ValueError("max_index must be >= 1")
    if max_index > MAX_SAFE_INDEX:
        raise ValueError(
            f"max_index {max_index} would overflow 64-bit terms; "
            f"largest safe index is {MAX_SAFE_INDEX}"
        )
    terms = [1, 2, 3, 4][:max_index]
    for i in range(5, max_index + 1):
        terms.append(terms[i - 4] + terms[i - 3])
    return QuiltSequence(terms=tuple(terms))


def index_of_value(seq: QuiltSequence, v: int) -> int | None:
    """Index i with q_i = v in seq, or None (e.g. 6 is never a term)."""
    return seq.index_of_value(v)


@dataclass
class IdentityReport:
    """Outcome of checking the three sequence identities up to max_index."""

    max_index: int
    recurrence_a_ok: bool = True  # q_{n+1} = q_n + q_{n-4}   (n >= 6)
    recurrence_b_ok: bool = True  # q_{n+1} = q_{n-1} + q_{n-2} (n >= 5)
    sum_identity_ok: bool = True  # sum_{i<=n} q_i = q_{n+5} - 6
    failures: list[str] = field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return self.recurrence_a_ok and self.recurrence_b_ok and self.sum_identity_ok


def verify_identities(max_index: int) -> IdentityReport:
    """Check both recurrences and the partial-sum identity on generated terms."""
    if max_index < 10:
        raise ValueError("max_index must be >= 10 to exercise all identities")
    seq = generate(max_index)
    t = seq.terms
    report = IdentityReport(max_index=max_index)
    for n in range(6, max_index):  # q_{n+1} needs n+1 <= max_index
        if t[n] != t[n - 1] + t[n - 5]:
            report.recurrence_a_ok = False
            report.failures.append(f"recurrence_a fails at n={n}")
            break
    for n in range(5, max_index):
        if t[n] != t[n - 2] + t[n - 3]:
            report.recurrence_b_ok = False
            report.failures.append(f"recurrence_b fails at n={n}")
            break
    running = 0
    for n in range(1, max_index - 4):  # needs q_{n+5}
        running += t[n - 1]
        if running != t[n + 4] - 6:
            report.sum_identity_ok = False
            report.failures.append(f"sum identity fails at n={n}")
            break
    return report
