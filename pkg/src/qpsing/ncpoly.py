"""Quivers, path words and truncated noncommutative series over Q.

Words live in the path algebra of a quiver: a word is a tuple of arrow
indices (composable left to right), and the lazy path e_i at vertex i is
encoded as the one-element tuple (-1 - i,).  Series are finite Fraction-
valued term maps, hard-truncated at a fixed word length N; every result
carries its N.

The monomial order used throughout the package is deglex: word length
first, then lexicographic in arrow declaration order.  Rewriting in
qpsing.ncgroebner is oriented towards *larger* words, which is the natural
orientation in the arrow-adic completion.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InvertibilityError, ParseError, TruncationMismatch
from . import _linalg

Word = tuple  # tuple of arrow indices, or (-1 - v,) for the trivial path at v


# ---------- words ----------

def trivial_word(vidx):
    return (-1 - vidx,)


def is_trivial(word):
    return len(word) == 1 and word[0] < 0


def word_len(word):
    if word and word[0] < 0:
        return 0
    return len(word)


def deglex_key(word):
    """Sort key realizing deglex; trivial paths sort first, by vertex."""
    if word and word[0] < 0:
        return (0, (-1 - word[0],))
    return (len(word), word)


class Quiver:
    """Finite quiver with ordered vertices and labelled arrows."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        self.arrows = tuple((str(l), str(s), str(t)) for (l, s, t) in arrows)
        self._vidx = {}
        for v in self.vertices:
            if v in self._vidx:
                raise InputError(f"duplicate vertex id {v!r}")
            self._vidx[v] = len(self._vidx)
        self._aidx = {}
        self.arrow_src = []
        self.arrow_tgt = []
        for label, s, t in self.arrows:
            if label in self._aidx:
                raise InputError(f"duplicate arrow label {label!r}")
            if s not in self._vidx:
                raise InputError(f"arrow {label!r}: unknown source vertex {s!r}")
            if t not in self._vidx:
                raise InputError(f"arrow {label!r}: unknown target vertex {t!r}")
            self._aidx[label] = len(self._aidx)
            self.arrow_src.append(self._vidx[s])
            self.arrow_tgt.append(self._vidx[t])

    # -- lookups --
    def vertex_index(self, v):
        try:
            return self._vidx[str(v)]
        except KeyError:
            raise InputError(f"unknown vertex {v!r}") from None

    def arrow_index(self, label):
        try:
            return self._aidx[label]
        except KeyError:
            raise InputError(f"unknown label {label!r}") from None

    def arrow_label(self, idx):
        return self.arrows[idx][0]

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_arrows(self):
        return len(self.arrows)

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
        )

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        arrows = ", ".join(f"{l}:{s}->{t}" for l, s, t in self.arrows)
        return f"Quiver(vertices {','.join(self.vertices)}; arrows {arrows})"

    # -- word geometry --
    def word_source(self, word):
        if word[0] < 0:
            return -1 - word[0]
        return self.arrow_src[word[0]]

    def word_target(self, word):
        if word[0] < 0:
            return -1 - word[0]
        return self.arrow_tgt[word[-1]]

    def word_composable(self, word):
        if word[0] < 0:
            return len(word) == 1
        return all(
            self.arrow_tgt[a] == self.arrow_src[b] for a, b in zip(word, word[1:])
        )

    def concat(self, w1, w2):
        """Concatenation product of two words, or None when non-composable."""
        if w1[0] < 0:
            return w2 if self.word_source(w2) == -1 - w1[0] else None
        if w2[0] < 0:
            return w1 if self.word_target(w1) == -1 - w2[0] else None
        if self.arrow_tgt[w1[-1]] != self.arrow_src[w2[0]]:
            return None
        return w1 + w2

    def word_str(self, word):
        if word[0] < 0:
            return f"e_{self.vertices[-1 - word[0]]}"
        return "*".join(self.arrows[a][0] for a in word)


@dataclass(frozen=True)
class PathWord:
    """Public face of a word: arrow labels, or a base vertex for length 0."""

    arrows: tuple
    base: str | None = None

    def key(self, quiver):
        if not self.arrows:
            if self.base is None:
                raise InputError("empty path word needs a base vertex")
            return trivial_word(quiver.vertex_index(self.base))
        word = tuple(quiver.arrow_index(l) for l in self.arrows)
        if not quiver.word_composable(word):
            raise InputError(f"non-composable path {'*'.join(self.arrows)}")
        return word

    @staticmethod
    def from_key(word, quiver):
        if word[0] < 0:
            return PathWord((), quiver.vertices[-1 - word[0]])
        return PathWord(tuple(quiver.arrow_label(a) for a in word))


class NCSeries:
    """Truncation-stamped element of the complete path algebra."""

    __slots__ = ("quiver", "trunc", "terms")

    def __init__(self, quiver, trunc, terms=None, _checked=False):
        if trunc < 0:
            raise InputError("truncation must be >= 0")
        self.quiver = quiver
        self.trunc = trunc
        clean = {}
        if terms:
            if _checked:
                clean = dict(terms)
            else:
                for word, coeff in terms.items():
                    coeff = Fraction(coeff)
                    if not coeff:
                        continue
                    if word_len(word) > trunc:
                        continue
                    if not quiver.word_composable(word):
                        raise InputError(f"non-composable word {word}")
                    clean[word] = clean.get(word, Fraction(0)) + coeff
                clean = {w: c for w, c in clean.items() if c}
        self.terms = clean

    # -- constructors --
    @classmethod
    def zero(cls, quiver, trunc):
        return cls(quiver, trunc, None, _checked=True)

    @classmethod
    def unit(cls, quiver, trunc):
        terms = {trivial_word(v): Fraction(1) for v in range(quiver.n_vertices)}
        return cls(quiver, trunc, terms, _checked=True)

    @classmethod
    def idempotent(cls, quiver, trunc, vertex):
        v = quiver.vertex_index(vertex)
        return cls(quiver, trunc, {trivial_word(v): Fraction(1)}, _checked=True)

    @classmethod
    def arrow(cls, quiver, trunc, label):
        a = quiver.arrow_index(label)
        if trunc < 1:
            return cls.zero(quiver, trunc)
        return cls(quiver, trunc, {(a,): Fraction(1)}, _checked=True)

    @classmethod
    def from_word(cls, quiver, trunc, word, coeff=1):
        return cls(quiver, trunc, {word: Fraction(coeff)})

    # -- projections --
    def is_zero(self):
        return not self.terms

    def coefficient(self, word):
        return self.terms.get(word, Fraction(0))

    def support(self):
        return sorted(self.terms, key=deglex_key)

    def min_word(self):
        return min(self.terms, key=deglex_key) if self.terms else None

    def max_len(self):
        return max((word_len(w) for w in self.terms), default=0)

    def constant_part(self):
        return {w: c for w, c in self.terms.items() if is_trivial(w)}

    def truncate(self, trunc):
        if trunc >= self.trunc:
            if trunc == self.trunc:
                return self
            raise TruncationMismatch("cannot raise a truncation stamp")
        terms = {w: c for w, c in self.terms.items() if word_len(w) <= trunc}
        return NCSeries(self.quiver, trunc, terms, _checked=True)

    def _require_same(self, other):
        if self.quiver != other.quiver:
            raise InputError("series over different quivers")
        if self.trunc != other.trunc:
            raise TruncationMismatch(
                f"truncation mismatch: {self.trunc} vs {other.trunc}"
            )

    # -- ring operations --
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCSeries.unit(self.quiver, self.trunc) * other
        self._require_same(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, Fraction(0)) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return NCSeries(self.quiver, self.trunc, terms, _checked=True)

    __radd__ = __add__

    def __neg__(self):
        return NCSeries(
            self.quiver, self.trunc, {w: -c for w, c in self.terms.items()},
            _checked=True,
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCSeries.unit(self.quiver, self.trunc) * other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return NCSeries.zero(self.quiver, self.trunc)
            return NCSeries(
                self.quiver, self.trunc,
                {w: x * c for w, x in self.terms.items()}, _checked=True,
            )
        self._require_same(other)
        trunc = self.trunc
        concat = self.quiver.concat
        out = {}
        for w1, c1 in self.terms.items():
            l1 = word_len(w1)
            for w2, c2 in other.terms.items():
                if l1 + word_len(w2) > trunc:
                    continue
                w = concat(w1, w2)
                if w is None:
                    continue
                s = out.get(w, Fraction(0)) + c1 * c2
                if s:
                    out[w] = s
                else:
                    del out[w]
        return NCSeries(self.quiver, self.trunc, out, _checked=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, NCSeries):
            return NotImplemented
        return (
            self.quiver == other.quiver
            and self.trunc == other.trunc
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.quiver, self.trunc, frozenset(self.terms.items())))

    # -- printing --
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for word in self.support():
            coeff = self.terms[word]
            wstr = self.quiver.word_str(word)
            if abs(coeff) == 1:
                body = wstr
            else:
                body = f"{abs(coeff)}*{wstr}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if coeff > 0 else f" - {body}")
        return "".join(parts)

    __repr__ = __str__


def multiply(s, t):
    """Concatenation product in the truncated path algebra."""
    return s * t


# ---------- parsing ----------

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<number>[0-9]+(?:/[0-9]+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<arrowsym>->)"
    r"|(?P<sym>[+\-*(),;:])"
)


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            tokens.append(_Token(kind, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _TokenStream:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind, text=None):
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            raise ParseError(f"expected {want!r}, found {tok.text or 'end of input'!r}",
                             tok.line, tok.col)
        return self.next()

    def accept(self, kind, text=None):
        tok = self.peek()
        if tok.kind == kind and (text is None or tok.text == text):
            return self.next()
        return None


def _vertex_id(stream):
    tok = stream.peek()
    if tok.kind in ("ident", "number") and "/" not in tok.text:
        stream.next()
        return tok.text
    raise ParseError(f"expected a vertex id, found {tok.text or 'end of input'!r}",
                     tok.line, tok.col)


def parse_quiver(text):
    """Parse `vertices i,j,...; arrows a:i->j, ...` into a Quiver."""
    stream = _TokenStream(text)
    tok = stream.expect("ident", "vertices")
    vertices = [_vertex_id(stream)]
    while stream.accept("sym", ","):
        vertices.append(_vertex_id(stream))
    stream.expect("sym", ";")
    arrows = []
    if stream.accept("ident", "arrows"):
        while True:
            label_tok = stream.expect("ident")
            stream.expect("sym", ":")
            src = _vertex_id(stream)
            stream.expect("arrowsym")
            tgt = _vertex_id(stream)
            arrows.append((label_tok.text, src, tgt, label_tok))
            if not stream.accept("sym", ","):
                break
        stream.accept("sym", ";")
    end = stream.peek()
    if end.kind != "eof":
        raise ParseError(f"unexpected trailing input {end.text!r}", end.line, end.col)

    seen_v = set()
    for v in vertices:
        if v in seen_v:
            raise ParseError(f"duplicate vertex id {v!r}")
        seen_v.add(v)
    seen_a = set()
    for label, src, tgt, tok in arrows:
        if label in seen_a:
            raise ParseError(f"duplicate arrow label {label!r}", tok.line, tok.col)
        seen_a.add(label)
        for v in (src, tgt):
            if v not in seen_v:
                raise ParseError(
                    f"arrow {label!r} references undeclared vertex {v!r}",
                    tok.line, tok.col,
                )
    return Quiver(vertices, [(l, s, t) for l, s, t, _ in arrows])


def _parse_atom(stream, quiver, trunc):
    tok = stream.peek()
    if tok.kind == "number":
        stream.next()
        if "/" in tok.text:
            num, den = tok.text.split("/")
            coeff = Fraction(int(num), int(den))
        else:
            coeff = Fraction(int(tok.text))
        return NCSeries.unit(quiver, trunc) * coeff
    if tok.kind == "ident":
        stream.next()
        if tok.text in quiver._aidx:
            return NCSeries.arrow(quiver, trunc, tok.text)
        if tok.text.startswith("e_") and tok.text[2:] in quiver._vidx:
            return NCSeries.idempotent(quiver, trunc, tok.text[2:])
        raise ParseError(f"unknown label {tok.text!r}", tok.line, tok.col)
    if stream.accept("sym", "("):
        inner = _parse_sum(stream, quiver, trunc)
        stream.expect("sym", ")")
        return inner
    if stream.accept("sym", "-"):
        return -_parse_atom(stream, quiver, trunc)
    raise ParseError(f"expected a term, found {tok.text or 'end of input'!r}",
                     tok.line, tok.col)


def _parse_product(stream, quiver, trunc):
    out = _parse_atom(stream, quiver, trunc)
    while stream.accept("sym", "*"):
        out = out * _parse_atom(stream, quiver, trunc)
    return out


def _parse_sum(stream, quiver, trunc):
    if stream.accept("sym", "-"):
        out = -_parse_product(stream, quiver, trunc)
    else:
        out = _parse_product(stream, quiver, trunc)
    while True:
        if stream.accept("sym", "+"):
            out = out + _parse_product(stream, quiver, trunc)
        elif stream.accept("sym", "-"):
            out = out - _parse_product(stream, quiver, trunc)
        else:
            return out


def parse_series(text, quiver, trunc):
    """Parse a series expression over arrow labels, `+ - * ( )` and p/q literals."""
    stream = _TokenStream(text)
    out = _parse_sum(stream, quiver, trunc)
    end = stream.peek()
    if end.kind != "eof":
        raise ParseError(f"unexpected trailing input {end.text!r}", end.line, end.col)
    return out


# ---------- substitutions ----------

class AlgebraMorphismData:
    """Unital substitution: arrow labels mapped to constant-free path series.

    The image of an arrow a:i->j must be a series of paths i->j.  When used
    as a right equivalence the label-to-linear-coefficient matrix of each
    vertex pair must be invertible.
    """

    def __init__(self, quiver, images):
        self.quiver = quiver
        self.images = dict(images)
        if set(self.images) != set(quiver._aidx):
            missing = set(quiver._aidx) - set(self.images)
            extra = set(self.images) - set(quiver._aidx)
            raise InputError(
                f"substitution must cover every arrow (missing {sorted(missing)},"
                f" extra {sorted(extra)})"
            )
        for label, img in self.images.items():
            if img.quiver != quiver:
                raise InputError("substitution image over the wrong quiver")
            a = quiver.arrow_index(label)
            src, tgt = quiver.arrow_src[a], quiver.arrow_tgt[a]
            for word in img.terms:
                if is_trivial(word):
                    raise InputError(f"image of {label!r} has a constant term")
                if quiver.word_source(word) != src or quiver.word_target(word) != tgt:
                    raise InputError(
                        f"image of {label!r} contains a path not parallel to it"
                    )

    def trunc(self):
        return next(iter(self.images.values())).trunc

    def linear_matrix(self, src, tgt):
        """Matrix of linear coefficients between arrows src -> tgt."""
        block = [
            a for a in range(self.quiver.n_arrows)
            if self.quiver.arrow_src[a] == src and self.quiver.arrow_tgt[a] == tgt
        ]
        return block, [
            [self.images[self.quiver.arrow_label(a)].coefficient((b,)) for b in block]
            for a in block
        ]

    def linear_part_invertible(self):
        for src in range(self.quiver.n_vertices):
            for tgt in range(self.quiver.n_vertices):
                block, mat = self.linear_matrix(src, tgt)
                if block and _linalg.det(mat) == 0:
                    return False
        return True


def substitute(series, phi, require_invertible=False):
    """Replace every arrow by its image and expand, keeping the truncation."""
    if phi.quiver != series.quiver:
        raise InputError("substitution over a different quiver")
    if require_invertible and not phi.linear_part_invertible():
        raise InvertibilityError("substitution has a non-invertible linear part")
    trunc = series.trunc
    quiver = series.quiver
    images = {
        quiver.arrow_index(label): (img if img.trunc == trunc
                                    else NCSeries(quiver, trunc, img.terms))
        for label, img in phi.images.items()
    }
    out = NCSeries.zero(quiver, trunc)
    cache = {}
    for word, coeff in series.terms.items():
        if is_trivial(word):
            out = out + NCSeries(quiver, trunc, {word: coeff}, _checked=True)
            continue
        acc = None
        for prefix_len in range(len(word), 0, -1):
            prefix = word[:prefix_len]
            if prefix in cache:
                acc = cache[prefix]
                break
        start = 0 if acc is None else prefix_len
        if acc is None:
            acc = images[word[0]]
            cache[word[:1]] = acc
            start = 1
        for k in range(start, len(word)):
            acc = acc * images[word[k]]
            cache[word[: k + 1]] = acc
        out = out + acc * coeff
    return out


def compose_morphisms(outer, inner):
    """Substitution doing `inner` first: (outer . inner)(a) = outer(inner(a))."""
    images = {
        label: substitute(img, outer) for label, img in inner.images.items()
    }
    return AlgebraMorphismData(outer.quiver, images)
