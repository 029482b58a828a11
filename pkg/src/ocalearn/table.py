"""Observation tables for one-counter active learning.

A table holds a prefix-closed set P of row labels, a suffix-closed set S
of column labels, and teacher-backed caches of membership bits and
counter-values.  Rows are labelled by P and its one-letter extensions;
the cell at (p, s) carries the membership of ps together with the action
vector of ps, and every row additionally carries the counter-value of
its label.  Closedness and consistency are checked per counter level d,
restricting attention to rows whose counter-value is at most d.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import doubled, sgn
from .errors import InvalidInput, TableIncomplete


@dataclass(frozen=True)
class ActionsVector:
    """Sign of the counter after a word, plus per-letter counter deltas.

    ``deltas[i]`` is the counter change caused by appending the i-th
    alphabet letter.  At sign 0 no delta can be -1 (the counter cannot
    go negative).  Two vectors are *similar* unless they share a sign
    and differ; dissimilar vectors must end up in different states.
    """

    sign: int
    deltas: tuple[int, ...]

    def __post_init__(self):
        if self.sign not in (0, 1):
            raise InvalidInput(f"sign must be 0 or 1, got {self.sign!r}")
        if any(d not in (-1, 0, 1) for d in self.deltas):
            raise InvalidInput(f"deltas must be in -1..1, got {self.deltas!r}")
        if self.sign == 0 and any(d < 0 for d in self.deltas):
            raise InvalidInput("decrement delta at counter sign 0")

    def similar(self, other: "ActionsVector") -> bool:
        if len(self.deltas) != len(other.deltas):
            raise InvalidInput("action vectors over different alphabets")
        return self.sign != other.sign or self == other

    def __str__(self):
        body = ",".join(f"{d:+d}" if d else "0" for d in self.deltas)
        return f"({self.sign},{body})"


def similar(u: ActionsVector, v: ActionsVector) -> bool:
    return u.similar(v)


class ObservationTable:
    """The learner's entire knowledge about the hidden machine.

    ``memb`` and ``cv`` are caches fed by teacher queries; filling is
    lazy, so repeated fills only query missing entries.  All scan orders
    (P insertion, then alphabet, then S insertion) are fixed, which makes
    a learning session deterministic for a given teacher.
    """

    def __init__(self, alphabet):
        self.alphabet = tuple(alphabet)
        self.prefixes: list[str] = [""]
        self.suffixes: list[str] = [""]
        self._prefix_set = {""}
        self._suffix_set = {""}
        self.memb: dict[str, int] = {}
        self.cv: dict[str, int] = {}
        self._actions_cache: dict[str, ActionsVector] = {}

    # -- structure ---------------------------------------------------

    def boundary(self) -> list[str]:
        """Row labels: P followed by its new one-letter extensions."""
        rows = list(self.prefixes)
        seen = set(rows)
        for p in self.prefixes:
            for a in self.alphabet:
                w = p + a
                if w not in seen:
                    seen.add(w)
                    rows.append(w)
        return rows

    def words(self) -> list[str]:
        """All table words (row label + suffix), deduplicated in scan order."""
        out = {}
        for label in self.boundary():
            for s in self.suffixes:
                out[label + s] = None
        return list(out)

    def add_prefix(self, word: str) -> None:
        """Add a word and all its prefixes to P (keeps P prefix-closed)."""
        for i in range(len(word) + 1):
            prefix = word[:i]
            if prefix not in self._prefix_set:
                self._prefix_set.add(prefix)
                self.prefixes.append(prefix)

    def add_suffix(self, word: str) -> None:
        """Add a word and all its suffixes to S (keeps S suffix-closed)."""
        for i in range(len(word), -1, -1):
            suffix = word[i:]
            if suffix not in self._suffix_set:
                self._suffix_set.add(suffix)
                self.suffixes.append(suffix)

    # -- filling -----------------------------------------------------

    def fill(self, teacher) -> None:
        """Extend the caches to cover every table word, its prefixes
        (for encoding) and its one-letter extensions (for actions)."""
        for word in self.words():
            for i in range(len(word) + 1):
                self.ensure_cv(word[:i], teacher)
            if word not in self.memb:
                self.memb[word] = int(teacher.mq(word))
            for a in self.alphabet:
                self.ensure_cv(word + a, teacher)

    def ensure_cv(self, word: str, teacher) -> int:
        if word not in self.cv:
            self.cv[word] = teacher.cv(word)
        return self.cv[word]

    # -- derived views -----------------------------------------------

    def membership(self, word: str) -> int:
        try:
            return self.memb[word]
        except KeyError:
            raise TableIncomplete(f"membership of {word!r} not filled") from None

    def counter_value(self, word: str) -> int:
        try:
            return self.cv[word]
        except KeyError:
            raise TableIncomplete(f"counter-value of {word!r} not filled") from None

    def actions(self, word: str) -> ActionsVector:
        cached = self._actions_cache.get(word)
        if cached is None:
            base = self.counter_value(word)
            deltas = tuple(self.counter_value(word + a) - base for a in self.alphabet)
            cached = ActionsVector(sgn(base), deltas)
            self._actions_cache[word] = cached
        return cached

    def enc(self, word: str) -> tuple[str, ...]:
        """Encoded form of a table word, read off the counter-value cache."""
        return tuple(doubled(word[i], sgn(self.counter_value(word[:i])))
                     for i in range(len(word)))

    def row(self, label: str):
        return (self.counter_value(label),
                tuple((self.membership(label + s), self.actions(label + s))
                      for s in self.suffixes))

    def distinct_rows_at(self, level: int | None) -> int:
        """Number of distinct row values with counter-value <= level
        (all levels when level is None)."""
        return len({self.row(r) for r in self.boundary()
                    if level is None or self.counter_value(r) <= level})

    # -- closedness and consistency ------------------------------------

    def find_unclosed(self, d: int):
        """First (P-insertion then alphabet order) pair (p, a) with
        cv(pa) <= d whose row matches no row of P; None when d-closed."""
        p_rows = {self.row(p) for p in self.prefixes}
        for p in self.prefixes:
            for a in self.alphabet:
                w = p + a
                if self.counter_value(w) <= d and self.row(w) not in p_rows:
                    return p, a
        return None

    def find_inconsistent(self, d: int):
        """First witness (p, q, a, s) with cv(p) = cv(q) <= d,
        row(p) = row(q) but row(pa) != row(qa); None when d-consistent.

        The returned suffix s satisfies Memb(pas) != Memb(qas) or
        Actions(pas) != Actions(qas).  Because the empty suffix is always
        a column, equal rows force equal counter-values on extensions, so
        such an s always exists; s = '' is returned defensively otherwise.
        """
        for i, p in enumerate(self.prefixes):
            cvp = self.counter_value(p)
            if cvp > d:
                continue
            row_p = self.row(p)
            for q in self.prefixes[i + 1:]:
                if self.counter_value(q) != cvp or self.row(q) != row_p:
                    continue
                for a in self.alphabet:
                    if self.row(p + a) == self.row(q + a):
                        continue
                    for s in self.suffixes:
                        if (self.membership(p + a + s) != self.membership(q + a + s)
                                or self.actions(p + a + s) != self.actions(q + a + s)):
                            return p, q, a, s
                    return p, q, a, ""
        return None

    def repair(self, d: int, teacher) -> "ObservationTable":
        """Grow the table until it is d-closed and d-consistent.

        Unclosed witnesses extend P, inconsistency witnesses extend S;
        the caches are refilled after each addition.  Returns self.
        """
        self.fill(teacher)
        while True:
            unclosed = self.find_unclosed(d)
            if unclosed is not None:
                p, a = unclosed
                self.add_prefix(p + a)
                self.fill(teacher)
                continue
            witness = self.find_inconsistent(d)
            if witness is not None:
                _, _, a, s = witness
                self.add_suffix(a + s)
                self.fill(teacher)
                continue
            return self
