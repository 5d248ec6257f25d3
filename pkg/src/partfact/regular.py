"""Decidable analyses on regular codes and regular submonoids.

The workhorse is the block parser: each partition class is compiled to a
deterministic acceptor of its nonempty products, and spontaneous moves
stitch an accepting configuration of one class to the start of every
other class. Accepting runs of the parser are then in bijection with
block factorizations of the message, so "is this partition coding" and
"is this code uniquely decipherable" reduce to run-uniqueness of one
acceptor.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence, Union

from . import fsa as A
from .errors import AlphabetMismatchError, PreconditionError
from .finite_code import FiniteCode, Partition, canonical_partition
from .fsa import Fsa
from .words import Alphabet, Word


class RegularCode:
    """Regular language of code words: nonempty, empty word excluded."""

    __slots__ = ("lang",)

    def __init__(self, lang: Fsa):
        lang = A.trim(lang)
        if lang.n_states == 0:
            raise PreconditionError("a code must be a nonempty language")
        if A.accepts(lang, ""):
            raise PreconditionError("a code may not contain the empty word")
        object.__setattr__(self, "lang", lang)

    def __setattr__(self, name, value):
        raise AttributeError("RegularCode is immutable")

    @property
    def alphabet(self) -> Alphabet:
        return self.lang.alphabet

    @staticmethod
    def from_regex(expr: str, alphabet: Alphabet) -> "RegularCode":
        return RegularCode(A.regex_to_fsa(expr, alphabet))

    @staticmethod
    def from_words(code: Union[FiniteCode, Iterable[Word]], alphabet: Optional[Alphabet] = None) -> "RegularCode":
        if isinstance(code, FiniteCode):
            return RegularCode(A.word_set_fsa(code.alphabet, code.words))
        words = list(code)
        if alphabet is None:
            alphabet = words[0].alphabet
        return RegularCode(A.word_set_fsa(alphabet, words))

    def __repr__(self) -> str:
        return f"RegularCode({self.lang!r})"


class RegularMonoid:
    """Regular submonoid of the free monoid: contains the empty word and
    is closed under concatenation (both checked at construction)."""

    __slots__ = ("lang",)

    def __init__(self, lang: Fsa, _trusted: bool = False):
        lang = A.trim(lang)
        if not _trusted:
            if not A.accepts(lang, ""):
                raise PreconditionError("a submonoid must contain the empty word")
            if not A.includes(lang, A.concat(lang, lang)):
                raise PreconditionError("language is not closed under concatenation")
        object.__setattr__(self, "lang", lang)

    def __setattr__(self, name, value):
        raise AttributeError("RegularMonoid is immutable")

    @property
    def alphabet(self) -> Alphabet:
        return self.lang.alphabet

    @staticmethod
    def generated_by(code: Union[RegularCode, Fsa]) -> "RegularMonoid":
        lang = code.lang if isinstance(code, RegularCode) else code
        return RegularMonoid(A.star(lang), _trusted=True)

    def __repr__(self) -> str:
        return f"RegularMonoid({self.lang!r})"


class RegularPartition:
    """Finite family of regular classes partitioning a regular code."""

    __slots__ = ("code", "classes")

    def __init__(self, code: RegularCode, classes: Sequence[Fsa]):
        classes = tuple(classes)
        if not classes:
            raise PreconditionError("a partition needs at least one class")
        for c in classes:
            if c.alphabet != code.alphabet:
                raise AlphabetMismatchError("class alphabet differs from the code's")
            if A.is_empty(c):
                raise PreconditionError("partition classes must be nonempty")
            if A.accepts(c, ""):
                raise PreconditionError("partition classes may not contain the empty word")
        for i in range(len(classes)):
            for j in range(i + 1, len(classes)):
                if not A.is_empty(A.intersection(classes[i], classes[j])):
                    raise PreconditionError(f"classes {i} and {j} overlap")
        whole = classes[0]
        for c in classes[1:]:
            whole = A.union(whole, c)
        if not A.equivalent(whole, code.lang):
            raise PreconditionError("classes do not cover the code exactly")
        object.__setattr__(self, "code", code)
        object.__setattr__(self, "classes", classes)

    def __setattr__(self, name, value):
        raise AttributeError("RegularPartition is immutable")

    @staticmethod
    def from_finite(p: Partition) -> "RegularPartition":
        alphabet = p.code.alphabet
        code = RegularCode.from_words(p.code)
        return RegularPartition(code, tuple(A.word_set_fsa(alphabet, c) for c in p.classes))

    def __len__(self) -> int:
        return len(self.classes)


# ---------------------------------------------------------------------------
# Submonoids and bases


def is_submonoid(l: Fsa) -> bool:
    """True iff the language contains the empty word and is closed under
    concatenation."""
    return A.accepts(l, "") and A.includes(l, A.concat(l, l))


def base(m: RegularMonoid) -> RegularCode:
    """The unique minimal generating set of the monoid: the nonempty
    elements that are not products of two nonempty elements."""
    nonempty = A.difference(m.lang, A.epsilon_fsa(m.alphabet))
    decomposable = A.concat(nonempty, nonempty)
    b = A.minimize(A.difference(nonempty, decomposable))
    if b.n_states == 0:
        raise PreconditionError("the trivial monoid has no base")
    return RegularCode(b)


def is_base(x: RegularCode) -> bool:
    """True iff x is exactly the base of the monoid it generates."""
    return A.equivalent(x.lang, base(RegularMonoid.generated_by(x)).lang)


# ---------------------------------------------------------------------------
# Density, completeness, witnesses


def is_dense(l: Fsa) -> bool:
    """True iff every word is a factor of some word of the language."""
    return A.is_universal(A.factor_closure(l))


def is_thin(l: Fsa) -> bool:
    return not is_dense(l)


def is_complete(x: RegularCode) -> bool:
    """True iff the generated monoid is dense."""
    return is_dense(A.star(x.lang))


def completeness_witness(x: RegularCode) -> Optional[Word]:
    """Shortlex-least word that is a factor of no message; None iff the
    code is complete."""
    return A.shortest_word(A.complement(A.factor_closure(A.star(x.lang))))


def extension_witness(x: RegularCode) -> Optional[Word]:
    """For an incomplete code, an unbordered non-factor w such that
    adjoining w as a fresh one-word class still yields a coding
    partition, i.e. (X u {w})* splits as a free product and the monoid of
    X is not full. Built as v b^(|v|-1) from the least missing factor v
    and the least letter b differing from v's first letter."""
    if len(x.alphabet) < 2:
        raise PreconditionError("the extension construction needs a second letter")
    v = completeness_witness(x)
    if v is None:
        return None
    first = v.text[0]
    b = next(s for s in x.alphabet.symbols if s != first)
    return x.alphabet.word(v.text + b * (len(v) - 1))


# ---------------------------------------------------------------------------
# Block parsers: unique decipherability and coding partitions


def _deterministic_class(lang: Fsa) -> Fsa:
    d = A.minimize(lang)
    if len(d.initial) != 1:
        raise AssertionError("minimized acceptor should have one initial state")
    return d


def _word_parser(x: RegularCode) -> Fsa:
    """Parser whose accepting runs are the factorizations of a message
    into code words: the deterministic acceptor of X with a spontaneous
    boundary move from each accepting state back to the start."""
    d = _deterministic_class(x.lang)
    init = next(iter(d.initial))
    trans = list(d.transitions) + [(f, None, init) for f in d.accepting]
    return Fsa(d.alphabet, d.n_states, trans, (init,), d.accepting)


def _block_parser(p: RegularPartition) -> Fsa:
    """Parser whose accepting runs are the block factorizations for the
    partition: one deterministic acceptor per class language X_i+, with
    spontaneous moves from accepting configurations of class i into the
    start of every class j != i.

    Class acceptors are determinized first so that different splittings
    of one block into class words do not create spurious runs.
    """
    dfas = [_deterministic_class(A.plus(c)) for c in p.classes]
    alphabet = p.code.alphabet
    offset = [1]
    for d in dfas[:-1]:
        offset.append(offset[-1] + d.n_states)
    n = 1 + sum(d.n_states for d in dfas)
    trans: list[tuple[int, Optional[str], int]] = []
    inits = []
    accs: list[list[int]] = []
    for i, d in enumerate(dfas):
        shift = offset[i]
        trans.extend((pp + shift, a, q + shift) for pp, a, q in d.transitions)
        inits.append(next(iter(d.initial)) + shift)
        accs.append([f + shift for f in d.accepting])
    for i in range(len(dfas)):
        trans.append((0, None, inits[i]))
        for j in range(len(dfas)):
            if i != j:
                trans.extend((f, None, inits[j]) for f in accs[i])
    accepting = [f for fs in accs for f in fs]
    return Fsa(alphabet, n, trans, (0,), accepting)


def regular_is_ud(x: RegularCode) -> bool:
    """Unique decipherability, decided by run-uniqueness of the parser
    that reads one code word at a time through the deterministic acceptor
    of X and marks each boundary with a spontaneous move."""
    return A.is_unambiguous(_word_parser(x))


def ud_ambiguity_witness(x: RegularCode) -> Optional[Word]:
    """A message with two distinct factorizations into code words; None
    when the code is uniquely decipherable."""
    return A.ambiguity_witness(_word_parser(x))


def regular_is_coding(p: RegularPartition) -> bool:
    """Decide whether the partition is coding: accepting runs of the
    block parser are in bijection with block factorizations, so the
    partition is coding iff the parser is run-unambiguous."""
    return A.is_unambiguous(_block_parser(p))


def coding_ambiguity_witness(p: RegularPartition) -> Optional[Word]:
    """A message with two distinct block factorizations; None when the
    partition is coding."""
    return A.ambiguity_witness(_block_parser(p))


def free_product_check(monoids: Sequence[RegularMonoid]) -> bool:
    """True iff the monoid generated by the union is the free product of
    the given monoids: bases must be pairwise disjoint and the base
    partition of the union must be coding."""
    if len(monoids) < 2:
        raise PreconditionError("a free product needs at least two factors")
    alphabet = monoids[0].alphabet
    for m in monoids[1:]:
        if m.alphabet != alphabet:
            raise AlphabetMismatchError("monoids use different alphabets")
    bases = [base(m) for m in monoids]  # raises on a trivial factor
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            if not A.is_empty(A.intersection(bases[i].lang, bases[j].lang)):
                return False
    whole = bases[0].lang
    for b in bases[1:]:
        whole = A.union(whole, b.lang)
    partition = RegularPartition(RegularCode(whole), tuple(b.lang for b in bases))
    return regular_is_coding(partition)


# ---------------------------------------------------------------------------
# Maximality and fullness


def is_maximal(x: RegularCode) -> bool:
    """Maximality for thin codes, where it coincides with completeness.
    Dense codes are refused: the equivalence is not available there."""
    if is_dense(x.lang):
        raise PreconditionError("maximality is only decided for thin codes")
    return is_complete(x)


def is_full(m: RegularMonoid) -> bool:
    """Whether the monoid is maximal in the free-product order, decided
    through its base (which must be thin; every regular base is)."""
    b = base(m)
    if is_dense(b.lang):
        raise PreconditionError("fullness is only decided for monoids with a thin base")
    return is_complete(b)


def is_maximal_ud(x: RegularCode) -> bool:
    """For a code that is a base: maximal among uniquely decipherable
    codes iff it is uniquely decipherable and generates a full monoid."""
    if not is_base(x):
        raise PreconditionError("the code is not a base")
    return regular_is_ud(x) and is_full(RegularMonoid.generated_by(x))


def lemma2_check(x: RegularCode, w: Word) -> bool:
    """Nonemptiness of (X* w X*)+ n X* for a thin complete code; the
    completeness theory predicts this always holds."""
    if w.alphabet != x.alphabet:
        raise AlphabetMismatchError("word and code use different alphabets")
    if is_dense(x.lang):
        raise PreconditionError("the code must be thin")
    if not is_complete(x):
        raise PreconditionError("the code must be complete")
    xs = A.star(x.lang)
    sandwiched = A.concat(A.concat(xs, A.word_fsa(w)), xs)
    return not A.is_empty(A.intersection(A.plus(sandwiched), xs))


# ---------------------------------------------------------------------------
# Constructions


def gen_ud(p: RegularPartition, seq: Sequence[int]) -> RegularCode:
    """The code X_{i1}+ X_{i2}+ ... X_{in}+ for a coding partition; such
    products are uniquely decipherable when adjacent indices differ and
    the last differs from the first."""
    if len(p) < 2:
        raise PreconditionError("the partition needs at least two classes")
    if len(seq) < 2:
        raise PreconditionError("the class sequence needs at least two entries")
    for i in seq:
        if not 0 <= i < len(p):
            raise PreconditionError(f"class index {i} out of range")
    for a, b in zip(seq, seq[1:]):
        if a == b:
            raise PreconditionError("adjacent class indices must differ")
    if seq[0] == seq[-1]:
        raise PreconditionError("the last class index must differ from the first")
    if not regular_is_coding(p):
        raise PreconditionError("the partition is not a coding partition")
    result = A.plus(p.classes[seq[0]])
    for i in seq[1:]:
        result = A.concat(result, A.plus(p.classes[i]))
    return RegularCode(A.trim(result))


def canonical_free_factorization(m: RegularMonoid) -> tuple[Optional[Fsa], list[Fsa]]:
    """Canonical decomposition of a finitely generated regular monoid:
    the free component generated by the unambiguous part of the base and
    one freely indecomposable factor per totally ambiguous component.

    Only monoids with a finite base are handled; an infinite base raises.
    """
    b = base(m)
    try:
        words = A.enumerate_finite_language(b.lang)
    except PreconditionError:
        raise PreconditionError("the monoid's base is infinite; decomposition is not supported")
    finite_base = FiniteCode(m.alphabet, words)
    unambiguous, ta = canonical_partition(finite_base)
    free_component = None
    if unambiguous:
        free_component = A.minimize(A.star(A.word_set_fsa(m.alphabet, unambiguous)))
    indecomposable = [A.minimize(A.star(A.word_set_fsa(m.alphabet, c))) for c in ta]
    return free_component, indecomposable
