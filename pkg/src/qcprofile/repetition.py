"""Longest repeated sub-circuit via a suffix automaton over gate tokens."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence


@dataclass(frozen=True)
class RepetitionFeatureSet:
    largest_repeat_len: int
    largest_repeat_count: int
    start: int = -1  # first occurrence of the reported substring

    def as_features(self) -> dict[str, int]:
        return {"largest_repeat_len": self.largest_repeat_len, "largest_repeat_count": self.largest_repeat_count}


class SuffixAutomaton:
    """Online construction (Blumer et al.). State 0 is the root.

    ``first_end[s]`` is the end index of the earliest occurrence of the
    strings in state ``s``; ``occurrences[s]`` is the size of its end-position
    set, i.e. how many times (overlaps included) those strings occur.
    """

    def __init__(self, tokens: Sequence[Hashable]):
        self.length = [0]
        self.link = [-1]
        self.next: list[dict] = [{}]
        self.first_end = [-1]
        self.is_clone = [False]
        last = 0
        for i, tok in enumerate(tokens):
            cur = self._new(self.length[last] + 1, i, False)
            p = last
            while p != -1 and tok not in self.next[p]:
                self.next[p][tok] = cur
                p = self.link[p]
            if p == -1:
                self.link[cur] = 0
            else:
                q = self.next[p][tok]
                if self.length[p] + 1 == self.length[q]:
                    self.link[cur] = q
                else:
                    clone = self._new(self.length[p] + 1, self.first_end[q], True)
                    self.next[clone] = dict(self.next[q])
                    self.link[clone] = self.link[q]
                    while p != -1 and self.next[p].get(tok) == q:
                        self.next[p][tok] = clone
                        p = self.link[p]
                    self.link[q] = self.link[cur] = clone
            last = cur
        self.occurrences = self._count_occurrences()

    def _new(self, length: int, first_end: int, clone: bool) -> int:
        self.length.append(length)
        self.link.append(-1)
        self.next.append({})
        self.first_end.append(first_end)
        self.is_clone.append(clone)
        return len(self.length) - 1

    def _count_occurrences(self) -> list[int]:
        cnt = [0 if c else 1 for c in self.is_clone]
        cnt[0] = 0
        # suffix links point to strictly shorter states: sweep by length, longest first
        for s in sorted(range(1, len(cnt)), key=self.length.__getitem__, reverse=True):
            cnt[self.link[s]] += cnt[s]
        return cnt


def longest_repeated_subcircuit(tokens: Sequence[Hashable]) -> RepetitionFeatureSet:
    """Longest token run that occurs at least twice (overlaps allowed).

    Among equally long candidates the one starting earliest is reported.
    """
    if len(tokens) < 2:
        return RepetitionFeatureSet(0, 0)
    sa = SuffixAutomaton(tokens)
    best = (0, 0, -1)  # (length, -start, count)
    for s in range(1, len(sa.length)):
        if sa.occurrences[s] < 2:
            continue
        ln = sa.length[s]
        start = sa.first_end[s] - ln + 1
        key = (ln, -start)
        if key > best[:2]:
            best = (ln, -start, sa.occurrences[s])
    if best[0] == 0:
        return RepetitionFeatureSet(0, 0)
    return RepetitionFeatureSet(best[0], best[2], -best[1])
