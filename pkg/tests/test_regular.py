import random

import pytest

from conftest import language_set, random_finite_code
from partfact import (
    Alphabet,
    FiniteCode,
    Partition,
    PreconditionError,
    RegularCode,
    RegularMonoid,
    RegularPartition,
    base,
    canonical_free_factorization,
    canonical_partition,
    coding_ambiguity_witness,
    completeness_witness,
    extension_witness,
    free_product_check,
    gen_ud,
    is_base,
    is_coding,
    is_complete,
    is_dense,
    is_full,
    is_maximal,
    is_maximal_ud,
    is_submonoid,
    is_thin,
    is_unbordered,
    lemma2_check,
    regular_is_coding,
    regular_is_ud,
    sp_is_ud,
    ud_ambiguity_witness,
)
from partfact import fsa as A

AB = Alphabet("ab")
ZO = Alphabet("01")
ABCD = Alphabet("abcd")
UNARY = Alphabet("a")

EXAMPLE1 = FiniteCode(ZO, ["00", "0010", "1000", "11", "1111", "010", "011"])


def code_rx(expr, alphabet=AB):
    return RegularCode.from_regex(expr, alphabet)


def code_words(alphabet, words):
    return RegularCode.from_words(FiniteCode(alphabet, words))


def uniform(n):
    return code_rx("(0|1)" * n, ZO)


def finite_texts(f):
    return [w.text for w in A.enumerate_finite_language(f)]


# ---------------------------------------------------------------------------
# Types


def test_regular_code_validation():
    with pytest.raises(PreconditionError):
        RegularCode(A.empty_fsa(AB))
    with pytest.raises(PreconditionError):
        RegularCode(A.regex_to_fsa("_|a", AB))


def test_regular_monoid_validation():
    RegularMonoid(A.regex_to_fsa("(aa|ba)*", AB))
    with pytest.raises(PreconditionError):
        RegularMonoid(A.regex_to_fsa("a*b", AB))  # no empty word
    with pytest.raises(PreconditionError):
        RegularMonoid(A.regex_to_fsa("_|a|aa|aaa", AB))  # not product-closed


def test_regular_partition_validation():
    x = code_rx("a|bb|ab", AB)
    with pytest.raises(PreconditionError):
        RegularPartition(x, (A.regex_to_fsa("a|bb", AB), A.regex_to_fsa("bb|ab", AB)))
    with pytest.raises(PreconditionError):
        RegularPartition(x, (A.regex_to_fsa("a", AB),))
    RegularPartition(x, (A.regex_to_fsa("a|ab", AB), A.regex_to_fsa("bb", AB)))


# ---------------------------------------------------------------------------
# Submonoids, bases


def test_is_submonoid_examples():
    assert is_submonoid(A.regex_to_fsa("(aa|ba)*", AB))
    assert not is_submonoid(A.regex_to_fsa("_|a|aa|aaa", AB))
    astar_minus_a = A.difference(A.full_language_fsa(AB), A.word_fsa(AB.word("a")))
    assert is_submonoid(astar_minus_a)


def test_base_examples():
    assert finite_texts(base(RegularMonoid(A.full_language_fsa(AB))).lang) == ["a", "b"]
    m = RegularMonoid.generated_by(uniform(2))
    assert finite_texts(base(m).lang) == ["00", "01", "10", "11"]
    m = RegularMonoid.generated_by(code_words(ZO, ["0", "01", "11"]))
    assert finite_texts(base(m).lang) == ["0", "01", "11"]


def test_base_of_trivial_monoid():
    with pytest.raises(PreconditionError):
        base(RegularMonoid(A.epsilon_fsa(AB)))


def test_is_base_examples():
    assert is_base(code_words(ZO, ["0", "01", "11"]))
    assert not is_base(code_words(AB, ["a", "aa"]))
    assert is_base(code_rx("a+b+", AB))


def test_base_generates_and_is_idempotent():
    rng = random.Random(11)
    for _ in range(25):
        code = random_finite_code(rng, max_words=4, max_len=3)
        m = RegularMonoid.generated_by(RegularCode.from_words(code))
        b = base(m)
        assert A.equivalent(A.star(b.lang), m.lang)  # the base generates
        assert A.equivalent(base(RegularMonoid.generated_by(b)).lang, b.lang)  # idempotent


# ---------------------------------------------------------------------------
# Density, completeness


def test_dense_thin_examples():
    assert is_dense(A.full_language_fsa(AB))
    assert is_thin(A.word_set_fsa(AB, AB.words(["aa", "ba"])))
    assert not is_dense(A.star(A.word_set_fsa(AB, AB.words(["aa", "ba"]))))


def test_complete_examples():
    assert is_complete(uniform(2))
    assert not is_complete(code_words(AB, ["aa", "ba"]))
    assert is_complete(code_words(UNARY, ["a"]))


def test_completeness_witness_examples():
    assert completeness_witness(code_words(AB, ["aa", "ba"])).text == "bb"
    assert completeness_witness(uniform(2)) is None
    assert completeness_witness(code_words(AB, ["a"])).text == "b"


def test_extension_witness_examples():
    x = code_words(AB, ["aa", "ba"])
    w = extension_witness(x)
    assert w.text == "bba"
    assert is_unbordered(w)
    assert completeness_witness(uniform(2)) is None and extension_witness(uniform(2)) is None
    assert extension_witness(code_words(AB, ["a"])).text == "b"
    with pytest.raises(PreconditionError):
        extension_witness(code_words(UNARY, ["a"]))


def test_extension_witness_proof_obligations():
    rng = random.Random(17)
    checked = 0
    while checked < 25:
        fc = random_finite_code(rng, max_symbols=2)
        if len(fc.alphabet) < 2:
            continue
        x = RegularCode.from_words(fc)
        w = extension_witness(x)
        if w is None:
            assert is_complete(x)
            continue
        checked += 1
        assert is_unbordered(w)
        assert not A.accepts(A.factor_closure(A.star(x.lang)), w.text)
        extended = RegularCode(A.union(x.lang, A.word_fsa(w)))
        partition = RegularPartition(extended, (x.lang, A.word_fsa(w)))
        assert regular_is_coding(partition)


# ---------------------------------------------------------------------------
# Unique decipherability


def test_regular_is_ud_examples():
    assert regular_is_ud(code_rx("a+b+", AB))
    assert not regular_is_ud(code_rx("a|ab|ba", AB))
    assert regular_is_ud(uniform(3))


def test_regular_is_ud_matches_sp_on_finite_codes():
    rng = random.Random(2718)
    for _ in range(100):
        fc = random_finite_code(rng)
        expected, _ = sp_is_ud(fc)
        assert regular_is_ud(RegularCode.from_words(fc)) == expected, fc


def _count_factorizations(message: str, texts, bound=None) -> int:
    counts = [0] * (len(message) + 1)
    counts[0] = 1
    for i in range(1, len(message) + 1):
        for t in texts:
            if i >= len(t) and message.startswith(t, i - len(t)):
                counts[i] += counts[i - len(t)]
    return counts[len(message)]


def test_ud_ambiguity_witness():
    rng = random.Random(1618)
    ambiguous_seen = 0
    for _ in range(60):
        fc = random_finite_code(rng)
        code = RegularCode.from_words(fc)
        witness = ud_ambiguity_witness(code)
        assert (witness is None) == regular_is_ud(code)
        if witness is not None:
            ambiguous_seen += 1
            assert _count_factorizations(witness.text, fc.texts()) >= 2, (fc, witness)
    assert ambiguous_seen > 10


def test_coding_ambiguity_witness():
    fc = FiniteCode(AB, ["a", "ab", "ba"])
    bad = RegularPartition(
        RegularCode.from_words(fc),
        (A.word_set_fsa(AB, AB.words(["a"])), A.word_set_fsa(AB, AB.words(["ab", "ba"]))),
    )
    witness = coding_ambiguity_witness(bad)
    assert witness is not None
    assert A.accepts(A.star(A.word_set_fsa(AB, fc.words)), witness.text)
    assert coding_ambiguity_witness(example3_partition()) is None


# ---------------------------------------------------------------------------
# Coding partitions of regular codes


def example3_partition():
    x = code_rx("a|bb|c|ad*b|bc*bb", ABCD)
    return RegularPartition(
        x, (A.regex_to_fsa("ad+b", ABCD), A.regex_to_fsa("a|ab|bb|c|bc*bb", ABCD))
    )


def test_regular_is_coding_examples():
    assert regular_is_coding(example3_partition())
    x = code_rx("a|bb|c|ad*b|bc*bb", ABCD)
    assert regular_is_coding(RegularPartition(x, (x.lang,)))
    fc = FiniteCode(AB, ["a", "ab", "ba"])
    bad = RegularPartition(
        RegularCode.from_words(fc),
        (A.word_set_fsa(AB, AB.words(["a"])), A.word_set_fsa(AB, AB.words(["ab", "ba"]))),
    )
    assert not regular_is_coding(bad)


def test_example1_block_parser_is_unambiguous_by_run_counting():
    from conftest import has_ambiguous_word
    from partfact import canonical_coding_partition
    from partfact.regular import _block_parser

    parser = _block_parser(RegularPartition.from_finite(canonical_coding_partition(EXAMPLE1)))
    assert A.is_unambiguous(parser)
    assert not has_ambiguous_word(parser, 8)


def test_regular_is_coding_matches_finite_is_coding():
    rng = random.Random(31415)
    for _ in range(60):
        fc = random_finite_code(rng, max_words=5, max_len=3)
        words = fc.sorted_words()
        rng.shuffle(words)
        cut = rng.randint(1, len(words))
        classes = [frozenset(words[:cut])] + ([frozenset(words[cut:])] if words[cut:] else [])
        p = Partition(fc, classes)
        expected = is_coding(fc, p)
        assert regular_is_coding(RegularPartition.from_finite(p)) == expected, fc


# ---------------------------------------------------------------------------
# Free products


def test_free_product_examples():
    m0 = RegularMonoid.generated_by(code_rx("ad+b", ABCD))
    m1 = RegularMonoid.generated_by(code_rx("a|ab|bb|c|bc*bb", ABCD))
    assert free_product_check([m0, m1])
    astar = RegularMonoid.generated_by(code_rx("a", AB))
    assert not free_product_check([astar, astar])
    aastar = RegularMonoid.generated_by(code_rx("aa", AB))
    assert not free_product_check([astar, aastar])
    with pytest.raises(PreconditionError):
        free_product_check([astar])
    with pytest.raises(PreconditionError):
        free_product_check([astar, RegularMonoid(A.epsilon_fsa(AB))])


def test_free_product_base_union_and_strict_growth():
    # when the product is free, the base of the generated monoid is the
    # union of the bases, and the generated monoid strictly grows
    m0 = RegularMonoid.generated_by(code_rx("ad+b", ABCD))
    m1 = RegularMonoid.generated_by(code_rx("a|ab|bb|c|bc*bb", ABCD))
    assert free_product_check([m0, m1])
    joint = RegularMonoid.generated_by(A.union(m0.lang, m1.lang))
    expected_base = A.union(base(m0).lang, base(m1).lang)
    assert A.equivalent(base(joint).lang, expected_base)
    assert A.includes(joint.lang, m0.lang) and not A.equivalent(joint.lang, m0.lang)
    assert A.includes(joint.lang, m1.lang) and not A.equivalent(joint.lang, m1.lang)


def test_free_product_matches_coding_partition_on_finite_codes():
    rng = random.Random(5150)
    for _ in range(40):
        fc = random_finite_code(rng, max_words=4, max_len=3)
        words = fc.sorted_words()
        if len(words) < 2:
            continue
        cut = rng.randint(1, len(words) - 1)
        left, right = words[:cut], words[cut:]
        p = Partition(fc, [frozenset(left), frozenset(right)])
        ml = RegularMonoid.generated_by(code_words(fc.alphabet, [w.text for w in left]))
        mr = RegularMonoid.generated_by(code_words(fc.alphabet, [w.text for w in right]))
        # free product of the two generated monoids asks the same question
        # about their bases; when the halves are their own bases it must
        # agree with the finite coding check
        bl, br = base(ml), base(mr)
        halves_are_bases = A.equivalent(bl.lang, A.word_set_fsa(fc.alphabet, left)) and A.equivalent(
            br.lang, A.word_set_fsa(fc.alphabet, right)
        )
        if halves_are_bases:
            verdict = free_product_check([ml, mr])
            assert verdict == is_coding(fc, p), fc
            if verdict:
                # the base of the generated monoid is the union of the bases
                joint = RegularMonoid.generated_by(A.union(ml.lang, mr.lang))
                assert A.equivalent(base(joint).lang, A.union(bl.lang, br.lang))


# ---------------------------------------------------------------------------
# Maximality, fullness


def test_is_maximal_examples():
    assert is_maximal(code_rx("(0|1)(0|1)(0|1)", ZO))
    assert not is_maximal(code_words(AB, ["aa", "ba"]))
    assert is_maximal(code_words(UNARY, ["a"]))


def test_is_maximal_refuses_dense_codes():
    dense_code = RegularCode(A.difference(A.full_language_fsa(AB), A.regex_to_fsa("_|a", AB)))
    assert is_dense(dense_code.lang)
    with pytest.raises(PreconditionError):
        is_maximal(dense_code)


def test_is_full_examples():
    astar_minus_a = RegularMonoid(A.difference(A.full_language_fsa(AB), A.word_fsa(AB.word("a"))))
    assert is_full(astar_minus_a)
    assert is_full(RegularMonoid.generated_by(uniform(2)))
    assert not is_full(RegularMonoid.generated_by(code_words(AB, ["aa", "ba"])))


def test_full_monoids_are_dense():
    candidates = [
        RegularMonoid(A.difference(A.full_language_fsa(AB), A.word_fsa(AB.word("a")))),
        RegularMonoid.generated_by(uniform(1)),
        RegularMonoid.generated_by(uniform(2)),
        RegularMonoid.generated_by(uniform(3)),
    ]
    for m in candidates:
        assert is_full(m)
        assert is_dense(m.lang)


def test_is_maximal_ud_examples():
    assert is_maximal_ud(uniform(2))
    # a+b+ is thin and complete (any word w is a factor of a.w.b), hence
    # a maximal UD code; mechanical checks agree
    apbp = code_rx("a+b+", AB)
    assert is_complete(apbp)
    assert is_maximal_ud(apbp)
    assert not is_maximal_ud(code_words(AB, ["a", "ab", "ba"]))  # a base, but not UD
    with pytest.raises(PreconditionError):
        is_maximal_ud(code_words(AB, ["a", "aa"]))  # not a base


# ---------------------------------------------------------------------------
# Lemma-2 style intersection check


def test_lemma2_examples():
    assert lemma2_check(uniform(2), ZO.word("0"))
    assert lemma2_check(uniform(2), ZO.word(""))
    with pytest.raises(PreconditionError):
        lemma2_check(code_words(AB, ["aa", "ba"]), AB.word("a"))


def test_lemma2_holds_for_thin_complete_samples():
    apbp = code_rx("a+b+", AB)
    for n in range(5):
        for text in ["".join(s) for s in __import__("itertools").product("ab", repeat=n)]:
            assert lemma2_check(apbp, AB.word(text))


# ---------------------------------------------------------------------------
# UD generator from coding partitions


def test_gen_ud_examples():
    p = RegularPartition.from_finite(_example1_canonical())
    code = gen_ud(p, [1, 2])
    assert regular_is_ud(code)
    with pytest.raises(PreconditionError):
        gen_ud(p, [1, 1])
    with pytest.raises(PreconditionError):
        gen_ud(p, [1, 2, 1])
    with pytest.raises(PreconditionError):
        gen_ud(p, [1])
    with pytest.raises(PreconditionError):
        gen_ud(p, [1, 5])


def _example1_canonical():
    from partfact import canonical_coding_partition

    return canonical_coding_partition(EXAMPLE1)


def test_gen_ud_language():
    p = RegularPartition.from_finite(_example1_canonical())
    code = gen_ud(p, [1, 2])
    # members are (class 1)+(class 2)+ products
    sample = "0010" + "11"
    assert A.accepts(code.lang, sample)
    assert A.accepts(code.lang, "00" + "1000" + "1111" + "11")
    assert not A.accepts(code.lang, "0010")
    assert not A.accepts(code.lang, "11" + "0010")


def test_gen_ud_rejects_non_coding_partition():
    fc = FiniteCode(AB, ["a", "ab", "ba"])
    p = RegularPartition(
        RegularCode.from_words(fc),
        (A.word_set_fsa(AB, AB.words(["a"])), A.word_set_fsa(AB, AB.words(["ab", "ba"]))),
    )
    with pytest.raises(PreconditionError):
        gen_ud(p, [0, 1])


# ---------------------------------------------------------------------------
# Canonical free factorization


def test_canonical_free_factorization_example1():
    # The base of (Example-1 code)* drops 1111 = 11.11, so 11 joins the
    # unambiguous part; one indecomposable factor remains.
    m = RegularMonoid.generated_by(RegularCode.from_words(EXAMPLE1))
    free_component, indecomposable = canonical_free_factorization(m)
    assert free_component is not None
    expected_free = A.star(A.word_set_fsa(ZO, ZO.words(["010", "011", "11"])))
    assert A.equivalent(free_component, expected_free)
    assert len(indecomposable) == 1
    expected_ta = A.star(A.word_set_fsa(ZO, ZO.words(["00", "0010", "1000"])))
    assert A.equivalent(indecomposable[0], expected_ta)


def test_canonical_free_factorization_ud_code():
    m = RegularMonoid.generated_by(code_words(ZO, ["0", "01", "11"]))
    free_component, indecomposable = canonical_free_factorization(m)
    assert indecomposable == []
    assert A.equivalent(free_component, m.lang)


def test_canonical_free_factorization_collapsing_base():
    m = RegularMonoid.generated_by(code_words(AB, ["a", "aa"]))
    free_component, indecomposable = canonical_free_factorization(m)
    assert indecomposable == []
    assert A.equivalent(free_component, A.regex_to_fsa("a*", AB))


def test_canonical_free_factorization_infinite_base():
    m = RegularMonoid.generated_by(code_rx("a+b+", AB))
    with pytest.raises(PreconditionError):
        canonical_free_factorization(m)


def test_canonical_free_factorization_matches_finite_analysis():
    rng = random.Random(404)
    for _ in range(25):
        fc = random_finite_code(rng, max_words=4, max_len=3)
        m = RegularMonoid.generated_by(RegularCode.from_words(fc))
        free_component, indecomposable = canonical_free_factorization(m)
        base_words = FiniteCode(fc.alphabet, A.enumerate_finite_language(base(m).lang))
        unambiguous, ta = canonical_partition(base_words)
        if unambiguous:
            assert free_component is not None
            assert A.equivalent(free_component, A.star(A.word_set_fsa(fc.alphabet, unambiguous)))
        else:
            assert free_component is None
        assert len(indecomposable) == len(ta)
        for f, cls in zip(indecomposable, ta):
            assert A.equivalent(f, A.star(A.word_set_fsa(fc.alphabet, cls)))
        # the factors recombine to the whole monoid
        whole = free_component if free_component is not None else A.epsilon_fsa(fc.alphabet)
        for f in indecomposable:
            whole = A.star(A.union(whole, f))
        assert A.equivalent(A.star(whole), m.lang)
