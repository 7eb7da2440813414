"""Tests for corpus-record builders and lexicon persistence."""

import io
import json

import numpy as np
import pytest

from densem.compose import SpaceRegistry, WordMeaning
from densem.density import DensityMatrix, pure
from densem.errors import (
    LexiconFormatError,
    RegistryError,
    ShapeError,
    UnknownWordError,
)
from densem.lexicon import (
    Lexicon,
    PairRecord,
    SubsetRecord,
    VerbTable,
    build_from_subsets,
    build_verb_from_pairs,
    load,
    save,
    taxonomy_mix,
)
from densem.spectral import eigh

PUB_SPACE = ("pub", "pitcher", "tonic")


def beer_records():
    return [
        SubsetRecord("beer", frozenset({"pub"}), 6.0),
        SubsetRecord("beer", frozenset({"pub", "pitcher"}), 7.0),
    ]


def beer_lexicon():
    registry = SpaceRegistry().register("n", PUB_SPACE)
    lex = Lexicon(registry)
    lex.add_word(WordMeaning.for_type(registry, "lager", "n", pure([6.0, 5.0, 0.0])))
    lex.add_word(WordMeaning.for_type(registry, "ale", "n", pure([7.0, 3.0, 0.0])))
    lex.add_word(
        WordMeaning.for_type(
            registry, "beer", "n", build_from_subsets(beer_records(), PUB_SPACE)
        )
    )
    return lex


class TestSubsetBuilder:
    def test_beer_matrix(self):
        dm = build_from_subsets(beer_records(), PUB_SPACE)
        np.testing.assert_allclose(
            dm.matrix, [[13.0, 7.0, 0.0], [7.0, 7.0, 0.0], [0.0, 0.0, 0.0]]
        )

    def test_single_singleton_record(self):
        dm = build_from_subsets([SubsetRecord("w", {"pitcher"}, 1.0)], PUB_SPACE)
        np.testing.assert_allclose(dm.matrix, np.diag([0.0, 1.0, 0.0]))

    def test_disjoint_singletons_stay_diagonal(self):
        dm = build_from_subsets(
            [SubsetRecord("w", {"pub"}, 3.0), SubsetRecord("w", {"tonic"}, 4.0)],
            PUB_SPACE,
        )
        np.testing.assert_allclose(dm.matrix, np.diag([3.0, 0.0, 4.0]))

    def test_count_splitting_additivity(self):
        whole = build_from_subsets([SubsetRecord("w", {"pub", "tonic"}, 5.0)], PUB_SPACE)
        split = build_from_subsets(
            [
                SubsetRecord("w", {"pub", "tonic"}, 2.0),
                SubsetRecord("w", {"pub", "tonic"}, 3.0),
            ],
            PUB_SPACE,
        )
        np.testing.assert_allclose(whole.matrix, split.matrix)

    def test_psd_for_random_records(self):
        rng = np.random.default_rng(307)
        labels = tuple(f"b{i}" for i in range(5))
        for _ in range(50):
            records = [
                SubsetRecord(
                    "w",
                    frozenset(
                        rng.choice(labels, size=int(rng.integers(1, 5)), replace=False)
                    ),
                    float(rng.uniform(0.1, 10.0)),
                )
                for _ in range(int(rng.integers(1, 6)))
            ]
            dm = build_from_subsets(records, labels)
            values = eigh(dm.matrix).values
            assert values[-1] >= -1e-9 * max(values[0], 1.0)

    def test_zero_one_vector_matches_pure(self):
        dm = build_from_subsets([SubsetRecord("w", {"pub", "pitcher"}, 1.0)], PUB_SPACE)
        np.testing.assert_allclose(dm.matrix, pure([1.0, 1.0, 0.0]).matrix)

    def test_rejects_bad_input(self):
        with pytest.raises(ShapeError):
            build_from_subsets([], PUB_SPACE)
        with pytest.raises(RegistryError):
            build_from_subsets([SubsetRecord("w", {"nope"}, 1.0)], PUB_SPACE)
        with pytest.raises(ShapeError):
            build_from_subsets(
                [SubsetRecord("a", {"pub"}, 1.0), SubsetRecord("b", {"pub"}, 1.0)],
                PUB_SPACE,
            )
        with pytest.raises(ShapeError):
            SubsetRecord("w", set(), 1.0)
        with pytest.raises(ShapeError):
            SubsetRecord("w", {"pub"}, 0.0)


class TestTaxonomyMix:
    def test_equal_mixture_of_pure_children(self):
        registry = SpaceRegistry().register("n", ("lions", "sloths"))
        lex = Lexicon(registry)
        lex.add_word(WordMeaning.for_type(registry, "lions", "n", pure([1.0, 0.0])))
        lex.add_word(WordMeaning.for_type(registry, "sloths", "n", pure([0.0, 1.0])))
        dm = taxonomy_mix([("lions", 0.5), ("sloths", 0.5)], lex)
        np.testing.assert_allclose(dm.matrix, np.diag([0.5, 0.5]))

    def test_single_child_is_normalized_child(self):
        lex = beer_lexicon()
        dm = taxonomy_mix([("lager", 1.0)], lex)
        np.testing.assert_allclose(dm.matrix, lex.word("lager").dm.matrix / 61.0)

    def test_beer_from_taxonomy_rank_two(self):
        lex = beer_lexicon()
        dm = taxonomy_mix([("lager", 0.5), ("ale", 0.5)], lex)
        values = eigh(dm.matrix).values
        assert values[1] > 1e-6  # genuinely rank two
        assert abs(values[2]) <= 1e-12  # supported on span{pub, pitcher}
        assert abs(dm.trace - 1.0) <= 1e-12

    def test_normalization_shields_child_scale(self):
        lex = beer_lexicon()
        mixed = taxonomy_mix([("lager", 1.0), ("ale", 1.0)], lex)
        lex2 = beer_lexicon()
        lex2.add_word(
            WordMeaning.for_type(
                lex2.registry, "lager", "n", pure([60.0, 50.0, 0.0])
            )
        )
        rescaled = taxonomy_mix([("lager", 1.0), ("ale", 1.0)], lex2)
        np.testing.assert_allclose(mixed.matrix, rescaled.matrix, atol=1e-12)

    def test_missing_child(self):
        with pytest.raises(UnknownWordError):
            taxonomy_mix([("stout", 1.0)], beer_lexicon())


class TestVerbBuilder:
    def test_single_pair(self):
        table = build_verb_from_pairs(
            [PairRecord("drink", {"patient": 1.0}, {"pub": 1.0}, 4.0)],
            ("patient", "mental", "surgery"),
            PUB_SPACE,
        )
        expected = np.zeros((3, 3))
        expected[0, 0] = 4.0
        np.testing.assert_allclose(table, expected)

    def test_drink_table_from_unit_pairs(self):
        subject_labels = ("patient", "mental", "surgery")
        target = np.array([[4.0, 5, 3], [6, 3, 2], [1, 2, 1]])
        records = [
            PairRecord("drink", {subject_labels[i]: 1.0}, {PUB_SPACE[j]: 1.0}, target[i, j])
            for i in range(3)
            for j in range(3)
        ]
        table = build_verb_from_pairs(records, subject_labels, PUB_SPACE)
        np.testing.assert_allclose(table, target)

    def test_additivity(self):
        labels = ("a", "b")
        one = build_verb_from_pairs(
            [
                PairRecord("v", {"a": 1.0}, {"b": 1.0}, 1.0),
                PairRecord("v", {"a": 1.0}, {"b": 1.0}, 2.0),
            ],
            labels,
            labels,
        )
        assert one[0, 1] == 3.0

    def test_rejects_mixed_verbs_and_unknown_labels(self):
        labels = ("a", "b")
        with pytest.raises(ShapeError):
            build_verb_from_pairs(
                [
                    PairRecord("v", {"a": 1.0}, {"a": 1.0}),
                    PairRecord("w", {"a": 1.0}, {"a": 1.0}),
                ],
                labels,
                labels,
            )
        with pytest.raises(RegistryError):
            build_verb_from_pairs([PairRecord("v", {"zzz": 1.0}, {"a": 1.0})], labels, labels)


class TestPersistence:
    def roundtrip(self, lex):
        buffer = io.StringIO()
        save(lex, buffer)
        buffer.seek(0)
        return load(buffer)

    def test_empty_lexicon(self):
        lex = self.roundtrip(Lexicon())
        assert lex.words() == ()
        assert lex.verbs() == ()

    def test_beer_lexicon_bit_exact(self):
        original = beer_lexicon()
        loaded = self.roundtrip(original)
        assert set(loaded.words()) == set(original.words())
        for name in original.words():
            np.testing.assert_array_equal(
                loaded.word(name).dm.matrix, original.word(name).dm.matrix
            )
            assert loaded.word(name).ptype == original.word(name).ptype

    def test_verb_table_roundtrip(self):
        lex = beer_lexicon()
        lex.registry.register("subjects", ("patient", "mental", "surgery"))
        table = np.array([[4.0, 5, 3], [6, 3, 2], [1, 2, 1]]) / 3.0
        lex.add_verb_table("drink", VerbTable("subjects", "n", table))
        loaded = self.roundtrip(lex)
        np.testing.assert_array_equal(loaded.verb_table("drink").table, table)
        assert loaded.verb_table("drink").subject_space == "subjects"

    def test_seventeen_digit_roundtrip_of_awkward_floats(self):
        registry = SpaceRegistry().register("n", ("a", "b"))
        lex = Lexicon(registry)
        awkward = np.array([[1.0 / 3.0, 1e-17], [1e-17, 0.1 + 0.2]])
        lex.add_word(WordMeaning.for_type(registry, "w", "n", DensityMatrix(awkward)))
        loaded = self.roundtrip(lex)
        np.testing.assert_array_equal(loaded.word("w").dm.matrix, (awkward + awkward.T) / 2)

    def test_file_roundtrip(self, tmp_path):
        path = tmp_path / "lex.json"
        save(beer_lexicon(), path)
        loaded = load(path)
        assert "beer" in loaded

    def test_handwritten_kinds_accepted(self, tmp_path):
        document = {
            "spaces": {"n": {"dim": 2, "labels": ["pub", "pitcher"]}},
            "words": {
                "lager": {"type": "n", "kind": "pure", "data": {"vector": ["6", "5"]}},
                "beer": {
                    "type": "n",
                    "kind": "subsets",
                    "data": {
                        "records": [
                            {"features": ["pub"], "count": "6"},
                            {"features": ["pub", "pitcher"], "count": "7"},
                        ]
                    },
                },
            },
            "verbs": {},
        }
        path = tmp_path / "lex.json"
        path.write_text(json.dumps(document))
        lex = load(path)
        np.testing.assert_allclose(
            lex.word("beer").dm.matrix, [[13.0, 7.0], [7.0, 7.0]]
        )
        np.testing.assert_allclose(
            lex.word("lager").dm.matrix, [[36.0, 30.0], [30.0, 25.0]]
        )


class TestSchemaErrors:
    def make(self, mutate):
        document = {
            "spaces": {"n": {"dim": 2, "labels": ["a", "b"]}},
            "words": {
                "w": {"type": "n", "kind": "pure", "data": {"vector": ["1", "0"]}}
            },
            "verbs": {},
        }
        mutate(document)
        return json.dumps(document)

    def expect_path(self, text, fragment):
        with pytest.raises(LexiconFormatError) as err:
            load(io.StringIO(text))
        assert fragment in str(err.value)

    def test_not_json(self):
        self.expect_path("{nope", "$")

    def test_missing_section(self):
        self.expect_path(self.make(lambda d: d.pop("verbs")), "$")

    def test_dim_label_mismatch(self):
        self.expect_path(self.make(lambda d: d["spaces"]["n"].__setitem__("dim", 3)), "$.spaces.n")

    def test_bad_number_string(self):
        self.expect_path(
            self.make(lambda d: d["words"]["w"]["data"]["vector"].__setitem__(0, "abc")),
            "$.words.w.data",
        )

    def test_bad_kind(self):
        self.expect_path(
            self.make(lambda d: d["words"]["w"].__setitem__("kind", "spooky")),
            "$.words.w",
        )

    def test_vector_length_mismatch(self):
        self.expect_path(
            self.make(lambda d: d["words"]["w"]["data"].__setitem__("vector", ["1"])),
            "$.words.w.data",
        )

    def test_word_type_unknown_space(self):
        self.expect_path(
            self.make(lambda d: d["words"]["w"].__setitem__("type", "q")),
            "$.words.w.type",
        )

    def test_matrix_word_must_be_psd(self):
        def mutate(d):
            d["words"]["w"] = {
                "type": "n",
                "kind": "matrix",
                "data": {"matrix": [["0", "1"], ["1", "0"]]},
            }

        self.expect_path(self.make(mutate), "$.words.w.data")

    def test_verb_unknown_space(self):
        def mutate(d):
            d["verbs"]["v"] = {
                "subject_space": "zzz",
                "object_space": "n",
                "rows": [["1", "2"]],
            }

        self.expect_path(self.make(mutate), "$.verbs.v")

    def test_ragged_verb_rows(self):
        def mutate(d):
            d["verbs"]["v"] = {
                "subject_space": "n",
                "object_space": "n",
                "rows": [["1", "2"], ["3"]],
            }

        self.expect_path(self.make(mutate), "$.verbs.v.rows")
