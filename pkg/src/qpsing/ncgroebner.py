"""Degree-truncated noncommutative Groebner engine for path-algebra ideals.

Rewriting is oriented towards the arrow-adic topology: a rule replaces its
deglex-smallest word (the lead) by strictly larger words, so reduction
chains ascend and terminate against the truncation.  This matches closed
two-sided ideals of the complete path algebra, where 1 + (higher order) is
a unit: the ideal (x^3 + x^4) rewrites x^3 -> -x^4 -> x^5 -> ... -> 0.

Completion is Buchberger/Mora overlap resolution processed by ascending
overlap degree, with eager inter-reduction.  Exactness is certified by the
acyclicity of the Ufnarovski graph of leading words together with the
degree margins 2*maxlead <= N and maxnormal < N; otherwise the quotient is
stamped truncated at N.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BasisOverflowError, InputError, TruncationMismatch
from .ncpoly import NCSeries, deglex_key, is_trivial, trivial_word, word_len

DEFAULT_TRUNCATION = 20
DEFAULT_BASIS_CAP = 100000


@dataclass(frozen=True)
class QuotientCertificate:
    status: str  # "exact" | "truncated"
    trunc: int
    witness: dict = field(default_factory=dict)

    @property
    def exact(self):
        return self.status == "exact"


class ReductionSystem:
    """Inter-reduced rewriting system lead -> tail with tails deglex-larger."""

    def __init__(self, quiver, trunc, rules):
        self.quiver = quiver
        self.trunc = trunc
        self.rules = tuple(sorted(rules, key=lambda r: deglex_key(r[0])))
        self._tails = {lead: tail for lead, tail in self.rules}
        self._lead_lens = sorted({len(lead) for lead, _ in self.rules})
        self._nf_cache = {}

    @property
    def leads(self):
        return [lead for lead, _ in self.rules]

    def max_lead_len(self):
        return self._lead_lens[-1] if self._lead_lens else 0

    def _find_divisor(self, word):
        return _find_divisor(word, self._tails, self._lead_lens)

    def is_normal(self, word):
        if is_trivial(word):
            return True
        return self._find_divisor(word) is None

    def word_normal_form(self, word):
        """Normal form of a single word, as a term dict (cached)."""
        if is_trivial(word):
            return {word: Fraction(1)}
        cached = self._nf_cache.get(word)
        if cached is None:
            cached = _rewrite({word: Fraction(1)}, self._tails, self._lead_lens,
                              self.trunc)
            self._nf_cache[word] = cached
        return cached

    def normal_form(self, series):
        if series.quiver != self.quiver:
            raise InputError("series over a different quiver")
        if series.trunc != self.trunc:
            raise TruncationMismatch(
                f"truncation mismatch: {series.trunc} vs {self.trunc}"
            )
        out = {}
        for word, coeff in series.terms.items():
            for nw, nc in self.word_normal_form(word).items():
                s = out.get(nw, Fraction(0)) + coeff * nc
                if s:
                    out[nw] = s
                else:
                    del out[nw]
        return NCSeries(self.quiver, self.trunc, out, _checked=True)

    def check_confluence(self):
        """Executable diamond check: both reductions of every overlap agree."""
        for lead1, tail1 in self.rules:
            for lead2, tail2 in self.rules:
                for word, left, right in _overlap_words(lead1, lead2):
                    if len(word) > self.trunc:
                        continue
                    s_terms = _spoly(tail1, right, left, tail2, self.trunc)
                    if _rewrite(s_terms, self._tails, self._lead_lens, self.trunc):
                        return False
        return True

    def normal_words(self, max_len, cap=DEFAULT_BASIS_CAP):
        """All normal words of length <= max_len, deglex order.

        Enumeration is level by level and stops early once a level is empty
        (prefixes of normal words are normal, so emptiness propagates).
        """
        quiver = self.quiver
        words = [trivial_word(v) for v in range(quiver.n_vertices)]
        level = [(a,) for a in range(quiver.n_arrows) if self.is_normal((a,))]
        while level:
            words.extend(level)
            if len(words) > cap:
                raise BasisOverflowError(f"normal-word count exceeds the cap {cap}")
            if len(level[0]) >= max_len:
                break
            nxt = []
            for word in level:
                tgt = quiver.arrow_tgt[word[-1]]
                for a in range(quiver.n_arrows):
                    if quiver.arrow_src[a] != tgt:
                        continue
                    cand = word + (a,)
                    # only suffixes ending at the new letter need checking
                    n = len(cand)
                    reducible = False
                    for l in self._lead_lens:
                        if l > n:
                            break
                        if cand[n - l:] in self._tails:
                            reducible = True
                            break
                    if not reducible:
                        nxt.append(cand)
            level = nxt
        return sorted(words, key=deglex_key)

    def ufnarovski_acyclic(self):
        """Finite-dimensionality test on the graph of normal words.

        Nodes are normal words of length d-1 (d = max lead length); there
        is an edge u -> v when u extended by one arrow stays normal and v
        is the length-(d-1) suffix.  Normal words of length >= d-1 are the
        paths of this graph, so the quotient is finite-dimensional exactly
        when the graph is acyclic.
        """
        quiver = self.quiver
        d = self.max_lead_len()
        if d == 0:
            return quiver.n_arrows == 0, {"nodes": 0, "edges": 0}
        n = d - 1
        if n == 0:
            nodes = [trivial_word(v) for v in range(quiver.n_vertices)]
        else:
            nodes = [w for w in self.normal_words(n) if word_len(w) == n]
        index = {w: i for i, w in enumerate(nodes)}
        succ = [[] for _ in nodes]
        edges = 0
        for w, i in index.items():
            tgt = quiver.word_target(w)
            for a in range(quiver.n_arrows):
                if quiver.arrow_src[a] != tgt:
                    continue
                ext = (a,) if is_trivial(w) else w + (a,)
                if not self.is_normal(ext):
                    continue
                suffix = ext[len(ext) - n:] if n else trivial_word(
                    quiver.arrow_tgt[a])
                j = index.get(suffix)
                if j is not None:
                    succ[i].append(j)
                    edges += 1
        color = [0] * len(nodes)
        for start in range(len(nodes)):
            if color[start]:
                continue
            stack = [(start, iter(succ[start]))]
            color[start] = 1
            while stack:
                node, it = stack[-1]
                advanced = False
                for j in it:
                    if color[j] == 1:
                        return False, {"nodes": len(nodes), "edges": edges}
                    if color[j] == 0:
                        color[j] = 1
                        stack.append((j, iter(succ[j])))
                        advanced = True
                        break
                if not advanced:
                    color[node] = 2
                    stack.pop()
        return True, {"nodes": len(nodes), "edges": edges}


# ---------- rewriting internals ----------

def _find_divisor(word, tails, lead_lens):
    """Leftmost, then shortest, occurrence of a lead inside `word`."""
    n = len(word)
    for pos in range(n):
        for l in lead_lens:
            if pos + l > n:
                break
            tail = tails.get(word[pos:pos + l])
            if tail is not None:
                return pos, word[pos:pos + l], tail
    return None


def _rewrite(terms, tails, lead_lens, trunc):
    """Normal form of a term dict; rewriting ascends, truncation kills >N."""
    out = {}
    pending = {}
    heap = []
    for word, coeff in terms.items():
        if word_len(word) > trunc or not coeff:
            continue
        if word not in pending:
            heapq.heappush(heap, (deglex_key(word), word))
        pending[word] = pending.get(word, Fraction(0)) + coeff
    while heap:
        _, word = heapq.heappop(heap)
        coeff = pending.pop(word, None)
        if not coeff:
            continue
        hit = None if is_trivial(word) else _find_divisor(word, tails, lead_lens)
        if hit is None:
            out[word] = out.get(word, Fraction(0)) + coeff
            continue
        pos, lead, tail = hit
        prefix = word[:pos]
        suffix = word[pos + len(lead):]
        for tw, tc in tail.items():
            nw = prefix + tw + suffix
            if len(nw) > trunc:
                continue
            prev = pending.get(nw)
            s = (prev or Fraction(0)) + coeff * tc
            if s:
                if prev is None:
                    heapq.heappush(heap, (deglex_key(nw), nw))
                pending[nw] = s
            else:
                pending.pop(nw, None)
    return {w: c for w, c in out.items() if c}


def _overlap_words(lead1, lead2):
    """Proper overlaps lead1 = u s, lead2 = s v; yields (word, u, v)."""
    n1, n2 = len(lead1), len(lead2)
    for k in range(1, min(n1, n2) + 1):
        if k == n1 and k == n2:
            continue  # identical words give no proper overlap
        if lead1[n1 - k:] == lead2[:k]:
            yield lead1 + lead2[k:], lead1[:n1 - k], lead2[k:]


def _spoly(tail1, right, left, tail2, trunc):
    """tail1*right - left*tail2 for the overlap word lead1*right = left*lead2."""
    out = {}
    for word, coeff in tail1.items():
        nw = word + right
        if len(nw) <= trunc:
            out[nw] = out.get(nw, Fraction(0)) + coeff
    for word, coeff in tail2.items():
        nw = left + word
        if len(nw) <= trunc:
            s = out.get(nw, Fraction(0)) - coeff
            if s:
                out[nw] = s
            else:
                del out[nw]
    return {w: c for w, c in out.items() if c}


def _split_components(series):
    """Split a series into its path-homogeneous (source, target) pieces."""
    quiver = series.quiver
    blocks = {}
    for word, coeff in series.terms.items():
        key = (quiver.word_source(word), quiver.word_target(word))
        blocks.setdefault(key, {})[word] = coeff
    return list(blocks.values())


def groebner(gens, trunc=DEFAULT_TRUNCATION):
    """Complete the two-sided ideal generated by `gens` up to degree `trunc`."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise InputError("no nonzero generators")
    quiver = gens[0].quiver
    for g in gens:
        if g.quiver != quiver:
            raise InputError("generators over different quivers")
        if g.trunc < trunc:
            raise TruncationMismatch(
                f"generator truncated at {g.trunc} < requested {trunc}"
            )
        if g.constant_part():
            raise InputError("generators must be constant-term-free")

    rules = {}  # lead -> tail dict
    lead_lens = []

    def refresh_lens():
        lead_lens[:] = sorted({len(lead) for lead in rules})

    agenda = []
    counter = 0

    def push(terms):
        nonlocal counter
        terms = {w: c for w, c in terms.items() if c and len(w) <= trunc}
        if not terms:
            return
        key = min(deglex_key(w) for w in terms)
        heapq.heappush(agenda, (key, counter, terms))
        counter += 1

    for g in gens:
        for component in _split_components(g.truncate(trunc)
                                           if g.trunc > trunc else g):
            push(component)

    while agenda:
        _, _, terms = heapq.heappop(agenda)
        terms = _rewrite(terms, rules, lead_lens, trunc)
        if not terms:
            continue
        lead = min(terms, key=deglex_key)
        c = terms[lead]
        tail = {w: -coeff / c for w, coeff in terms.items() if w != lead}

        # displace rules whose lead contains the new lead as a subword
        displaced = [
            old for old in rules
            if len(old) > len(lead) and any(
                old[i:i + len(lead)] == lead
                for i in range(len(old) - len(lead) + 1)
            )
        ]
        for old in displaced:
            old_tail = rules.pop(old)
            series = {old: Fraction(1)}
            for w, c2 in old_tail.items():
                series[w] = series.get(w, Fraction(0)) - c2
            push(series)
        rules[lead] = tail
        refresh_lens()

        # keep stored tails fully reduced
        probe = {lead: tail}
        probe_len = [len(lead)]
        for rl in list(rules):
            if rl == lead:
                continue
            tl = rules[rl]
            if any(_find_divisor(w, probe, probe_len) for w in tl):
                rules[rl] = _rewrite(tl, rules, lead_lens, trunc)

        for other_lead, other_tail in list(rules.items()):
            for word, left, right in _overlap_words(lead, other_lead):
                if len(word) <= trunc:
                    push(_spoly(tail, right, left, other_tail, trunc))
            if other_lead == lead:
                continue
            for word, left, right in _overlap_words(other_lead, lead):
                if len(word) <= trunc:
                    push(_spoly(other_tail, right, left, tail, trunc))

    # final inter-reduction of tails until stable
    changed = True
    while changed:
        changed = False
        for lead in list(rules):
            reduced = _rewrite(rules[lead], rules, lead_lens, trunc)
            if reduced != rules[lead]:
                rules[lead] = reduced
                changed = True

    return ReductionSystem(quiver, trunc, list(rules.items()))


def normal_form(series, system):
    return system.normal_form(series)


def quotient_algebra(system, cap=DEFAULT_BASIS_CAP):
    """Quotient of the truncated path algebra: basis, table, certificate."""
    from .findim import FinDimAlgebra

    quiver = system.quiver
    trunc = system.trunc
    d = system.max_lead_len()
    acyclic, graph = system.ufnarovski_acyclic()
    basis = system.normal_words(trunc, cap)
    max_normal = max((word_len(w) for w in basis), default=0)

    reasons = []
    if not acyclic:
        reasons.append("ufnarovski graph has a cycle: infinitely many normal words")
    elif max_normal >= trunc:
        reasons.append("normal words reach the truncation bound")
    if 2 * d > trunc:
        reasons.append(
            f"overlap bound 2*{d} exceeds truncation {trunc}: unresolved ambiguities"
        )

    exact = not reasons
    certificate = QuotientCertificate(
        status="exact" if exact else "truncated",
        trunc=trunc,
        witness=(
            {"ufnarovski": graph, "max_lead_len": d, "max_normal_len": max_normal}
            if exact
            else {"degree_reached": trunc, "reasons": reasons}
        ),
    )

    index = {w: i for i, w in enumerate(basis)}
    labels = [quiver.word_str(w) for w in basis]
    table = [[None] * len(basis) for _ in basis]
    for i, wi in enumerate(basis):
        for j, wj in enumerate(basis):
            prod = quiver.concat(wi, wj)
            if prod is None or len(prod) > trunc:
                table[i][j] = {}
                continue
            nf = system.word_normal_form(prod)
            table[i][j] = {index[w]: c for w, c in nf.items()}
    unit = [Fraction(0)] * len(basis)
    for v in range(quiver.n_vertices):
        unit[index[trivial_word(v)]] = Fraction(1)

    algebra = FinDimAlgebra(labels, table, unit, words=basis, quiver=quiver)
    return algebra, certificate
