import itertools

import pytest

from colored_descents.group import (
    ColoredLetter,
    ColoredPermutation,
    compose,
    descent_positions,
    enumerate_group,
    inverse,
    parse_one_line,
    word_str,
)
from colored_descents.posets import (
    AnchoredWord,
    anchored_chain_poset,
    chain_poset,
    colored_linear_extensions,
    decompose_anchored,
    disjoint_union,
    linear_extensions,
    make_poset,
    poset_from_json,
    poset_to_json,
    shuffles,
    standardize_word,
    word_permutation,
    zigzag_poset,
)

L = ColoredLetter


@pytest.fixture
def hasse_example():
    # 4-colored poset: 0_1 < 0_2 < 1_0 < 3_1 < 0_3 together with 2_1 < 1_0
    return make_poset(
        4,
        3,
        [L(0, 1), L(1, 2), L(1, 3)],
        [
            (L(2, 0), L(0, 1)),
            (L(0, 1), L(1, 3)),
            (L(1, 3), L(3, 0)),
            (L(1, 2), L(0, 1)),
        ],
    )


class TestMakePoset:
    def test_six_elements(self, hasse_example):
        assert len(hasse_example.elements) == 6
        assert (L(1, 2), L(3, 0)) in hasse_example.less  # transitivity

    def test_zero_chain_alone(self):
        poset = make_poset(3, 0, [], [])
        assert poset.elements == frozenset({L(1, 0), L(2, 0)})
        assert (L(1, 0), L(2, 0)) in poset.less

    def test_cycle_rejected(self):
        with pytest.raises(ValueError, match="cycle"):
            make_poset(2, 2, [L(0, 1), L(0, 2)], [(L(0, 1), L(0, 2)), (L(0, 2), L(0, 1))])

    def test_duplicate_values_rejected(self):
        with pytest.raises(ValueError):
            make_poset(2, 2, [L(0, 1), L(1, 1)], [])

    def test_illegal_letter_rejected(self):
        with pytest.raises(ValueError):
            make_poset(2, 2, [L(0, 3)], [])


class TestLinearExtensions:
    def test_hasse_example(self, hasse_example):
        words = [str(w) for w in linear_extensions(hasse_example)]
        assert sorted(words) == sorted(
            [
                "0_1 0_2 2_1 1_0 3_1 0_3",
                "0_1 2_1 0_2 1_0 3_1 0_3",
                "2_1 0_1 0_2 1_0 3_1 0_3",
            ]
        )
        # lexicographic output order, color-first letter comparisons
        assert words == sorted(words, key=lambda s: [  # parse back to letters
            (int(t.split("_")[1]), int(t.split("_")[0])) for t in s.split()
        ])

    def test_total_chain_single_extension(self):
        pi = parse_one_line("2_1 1_0 3_2", 3)
        poset = anchored_chain_poset(pi)
        words = linear_extensions(poset)
        assert len(words) == 1
        assert words[0].word[:3] == pi.letters

    def test_zero_chain_word(self):
        poset = make_poset(2, 0, [], [])
        assert [str(w) for w in linear_extensions(poset)] == ["0_1"]


class TestDecompose:
    def test_shifted_block(self):
        w = AnchoredWord(4, (L(1, 0), L(2, 0), L(1, 2), L(0, 1), L(1, 3), L(3, 0)))
        parts = decompose_anchored(w)
        assert parts == ((), (), (L(3, 2), L(2, 1), L(3, 3)), ())

    def test_leading_word_unshifted(self):
        pi = parse_one_line("2_1 1_0", 3)
        w = AnchoredWord(3, pi.letters + (L(1, 0), L(2, 0)))
        assert decompose_anchored(w) == (pi.letters, (), ())

    def test_trailing_word_fully_shifted(self):
        pi = parse_one_line("2_1 1_0", 3)
        w = AnchoredWord(3, (L(1, 0), L(2, 0)) + pi.letters)
        parts = decompose_anchored(w)
        assert parts == ((), (), tuple(x.shifted(2, 3) for x in pi.letters))

    def test_anchored_word_validation(self):
        with pytest.raises(ValueError):
            AnchoredWord(3, (L(2, 0), L(1, 0)))  # zero letters out of order


class TestShuffles:
    def test_counts_are_multinomial(self):
        a = (L(0, 1), L(0, 2))
        b = (L(1, 3),)
        assert len(list(shuffles([a, b]))) == 3
        assert len(list(shuffles([a, b, (L(2, 4),)]))) == 12

    def test_single_word(self):
        assert list(shuffles([(L(0, 1),)])) == [(L(0, 1),)]

    def test_empty(self):
        assert list(shuffles([])) == [()]


class TestColoredExtensions:
    def test_hasse_example(self, hasse_example):
        words = sorted(word_str(w) for w in colored_linear_extensions(hasse_example))
        assert words == sorted(
            [
                "1_2 2_0 3_3",
                "1_2 2_1 3_3",
                "1_2 3_3 2_0",
                "1_2 3_3 2_1",
                "2_0 1_2 3_3",
                "2_1 1_2 3_3",
                "2_3 1_2 3_3",
            ]
        )

    def test_chain_gives_back_pi(self):
        pi = parse_one_line("3_2 1_0 2_1", 3)
        assert colored_linear_extensions(anchored_chain_poset(pi)) == [pi.letters]

    def test_antichain_gives_whole_group(self):
        poset = make_poset(2, 2, [L(0, 1), L(0, 2)], [])
        words = colored_linear_extensions(poset)
        got = {ColoredPermutation(2, w) for w in words}
        assert len(words) == 8
        assert got == set(enumerate_group(2, 2))


class TestZigzagAndChain:
    def test_worked_zigzag(self):
        pi = parse_one_line("2_1 1_2 3_2", 3)
        poset = zigzag_poset({1}, pi)
        assert (pi.letters[1], pi.letters[0]) in poset.less  # 1_2 < 2_1 reversed
        words = colored_linear_extensions(poset)
        assert sorted(word_str(w) for w in words) == [
            "1_2 2_0 3_2",
            "1_2 2_1 3_2",
            "1_2 2_2 3_2",
            "1_2 3_2 2_0",
            "1_2 3_2 2_1",
            "1_2 3_2 2_2",
            "2_0 1_2 3_2",
            "2_2 1_2 3_2",
        ]
        quotients = {
            str(compose(inverse(ColoredPermutation(3, w)), pi)) for w in words
        }
        assert quotients == {
            "2_0 1_0 3_0",
            "3_0 1_0 2_0",
            "1_1 2_0 3_0",
            "2_1 1_0 3_0",
            "3_1 1_0 2_0",
            "1_2 2_0 3_0",
            "2_2 1_0 3_0",
            "3_2 1_0 2_0",
        }

    def test_worked_chain(self):
        pi = parse_one_line("2_1 1_2 3_2", 3)
        z_words = colored_linear_extensions(zigzag_poset({1}, pi))
        c_words = colored_linear_extensions(chain_poset({1}, pi))
        assert set(c_words) == set(z_words) | {pi.letters}
        extra = compose(inverse(pi), pi)
        assert str(extra) == "1_0 2_0 3_0"

    def test_empty_index_set_matches(self):
        pi = parse_one_line("2_0 1_1", 2)
        assert zigzag_poset(set(), pi).less == chain_poset(set(), pi).less

    def test_full_index_set_chain_is_discrete(self):
        pi = parse_one_line("2_0 1_1", 2)
        poset = chain_poset({1, 2}, pi)
        assert poset.less == frozenset()  # r=2: zero chain is a single letter

    def test_lemma_exhaustive_small(self):
        for r, n in [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3)]:
            group = list(enumerate_group(r, n))
            for pi in group:
                for size in range(n + 1):
                    for I in itertools.combinations(range(1, n + 1), size):
                        Iset = frozenset(I)
                        z_words = colored_linear_extensions(zigzag_poset(Iset, pi))
                        z = [ColoredPermutation(r, w) for w in z_words]
                        want_z = {
                            s
                            for s in group
                            if descent_positions(compose(inverse(s), pi).letters)
                            == Iset
                        }
                        assert len(z) == len(set(z))
                        assert set(z) == want_z
                        c_words = colored_linear_extensions(chain_poset(Iset, pi))
                        c = [ColoredPermutation(r, w) for w in c_words]
                        want_c = {
                            s
                            for s in group
                            if descent_positions(compose(inverse(s), pi).letters)
                            <= Iset
                        }
                        assert len(c) == len(set(c))
                        assert set(c) == want_c
                        assert want_z <= set(c)


class TestDisjointUnion:
    def test_singleton_with_zero_chain(self):
        single = make_poset(3, 1, [L(0, 1)], [])
        words = colored_linear_extensions(single)
        assert sorted(word_str(w) for w in words) == ["1_0", "1_1", "1_2"]

    def test_union_with_empty(self):
        p = make_poset(2, 2, [L(0, 1), L(1, 2)], [(L(0, 1), L(1, 2))])
        empty = make_poset(2, 0, [], [])
        assert disjoint_union(p, empty).less == p.less

    def test_two_singletons(self):
        a = make_poset(2, 1, [L(0, 1)], [])
        b = make_poset(2, 2, [L(0, 2)], [])
        union = disjoint_union(a, b)
        assert len(colored_linear_extensions(union)) == 8

    def test_overlap_rejected(self):
        a = make_poset(2, 1, [L(0, 1)], [])
        with pytest.raises(ValueError):
            disjoint_union(a, a)

    def test_r_mismatch_rejected(self):
        a = make_poset(2, 1, [L(0, 1)], [])
        b = make_poset(3, 2, [L(0, 2)], [])
        with pytest.raises(ValueError):
            disjoint_union(a, b)

    def test_union_closes_through_zero_letters(self):
        # a < 0_1 in one poset and 0_1 < b in the other chain together
        a = make_poset(3, 1, [L(0, 1)], [(L(0, 1), L(1, 0))])
        b = make_poset(3, 2, [L(2, 2)], [(L(1, 0), L(2, 2))])
        union = disjoint_union(a, b)
        assert (L(0, 1), L(2, 2)) in union.less


class TestSubAlphabets:
    def test_extensions_standardize_into_group(self):
        poset = make_poset(2, 6, [L(0, 2), L(1, 5)], [(L(0, 2), L(1, 5))])
        group = set(enumerate_group(2, 2))
        for w in colored_linear_extensions(poset):
            assert standardize_word(2, w) in group

    def test_word_permutation_validates(self):
        with pytest.raises(ValueError):
            word_permutation(2, (L(0, 2), L(1, 5)))


class TestUnsatisfiableBoundary:
    def test_one_color_reversed_at_end(self):
        pi = parse_one_line("1_0 2_0", 1)
        poset = zigzag_poset({2}, pi)
        assert poset.unsatisfiable
        assert colored_linear_extensions(poset) == []

    def test_one_color_chain_never_unsatisfiable(self):
        pi = parse_one_line("2_0 1_0", 1)
        assert not chain_poset({1, 2}, pi).unsatisfiable


class TestJson:
    def test_round_trip(self, hasse_example):
        data = poset_to_json(hasse_example)
        clone = poset_from_json(data)
        assert clone.elements == hasse_example.elements
        assert clone.less == hasse_example.less

    def test_malformed_record(self):
        with pytest.raises(ValueError, match="malformed"):
            poset_from_json({"r": 2, "n": 1})

    def test_documented_shape(self, hasse_example):
        data = poset_to_json(hasse_example)
        assert data["r"] == 4 and data["n"] == 3
        assert [1, 0] in data["elements"]
        assert all(len(cover) == 2 for cover in data["covers"])
