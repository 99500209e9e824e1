import json
import math

import numpy as np
import pytest

from rusent import TfidfVectorizer, load_tfidf, save_tfidf
from rusent.exceptions import NotFittedError
from rusent.features import write_word_frequencies
from rusent.preprocess import TokenizedComment

from conftest import random_tfidf_instance

# Hand-worked 3-document example: df = 2 for each of acha/bura/drama with
# N = 3, so idf = ln((1+3)/(1+2)) + 1 for all three terms.
IDF_EXPECTED = 1.2876820724517808
INV_SQRT2 = 0.7071067811865475


class TestFit:
    def test_worked_example(self, toy_docs):
        vec = TfidfVectorizer().fit(toy_docs)
        assert vec.n_features_ == 3
        assert set(vec.vocabulary_) == {"acha", "bura", "drama"}
        assert vec.document_frequency_.tolist() == [2, 2, 2]
        np.testing.assert_allclose(vec.idf_, IDF_EXPECTED, atol=1e-9)
        assert vec.n_documents_ == 3

    def test_max_features_keeps_highest_total_frequency(self, toy_docs):
        # totals: acha 3, bura 3, drama 2 (hand count)
        vec = TfidfVectorizer(max_features=2).fit(toy_docs)
        assert set(vec.vocabulary_) == {"acha", "bura"}

    def test_tie_break_is_lexicographic(self):
        docs = [["zee", "aab"], ["zee"], ["aab"], ["meem"]]
        # totals: zee 2, aab 2, meem 1; cap 1 keeps "aab" (tie zee/aab -> lexicographic)
        vec = TfidfVectorizer(max_features=1).fit(docs)
        assert set(vec.vocabulary_) == {"aab"}

    def test_indices_dense_and_deterministic(self, toy_docs):
        a = TfidfVectorizer().fit(toy_docs)
        b = TfidfVectorizer().fit(toy_docs)
        assert a.vocabulary_ == b.vocabulary_
        assert sorted(a.vocabulary_.values()) == list(range(a.n_features_))

    def test_all_empty_docs_raises(self):
        with pytest.raises(ValueError, match="no terms"):
            TfidfVectorizer().fit([[], [], []])

    def test_empty_sequence_raises(self):
        with pytest.raises(ValueError, match="empty"):
            TfidfVectorizer().fit([])

    @pytest.mark.parametrize("cap", [0, -1, None])
    def test_invalid_max_features(self, cap, toy_docs):
        with pytest.raises(ValueError):
            TfidfVectorizer(max_features=cap).fit(toy_docs)

    def test_accepts_tokenized_comments(self, toy_docs):
        docs = [TokenizedComment(i, tuple(d), 0) for i, d in enumerate(toy_docs)]
        vec = TfidfVectorizer().fit(docs)
        assert vec.n_features_ == 3

    def test_rejects_raw_strings(self):
        with pytest.raises(TypeError):
            TfidfVectorizer().fit(["acha drama"])

    def test_idf_monotone_in_df(self):
        docs = [["rare", "common"], ["common"], ["common", "mid"], ["mid"]]
        vec = TfidfVectorizer().fit(docs)
        idf = {t: vec.idf_[i] for t, i in vec.vocabulary_.items()}
        # df: common 3, mid 2, rare 1
        assert idf["rare"] > idf["mid"] > idf["common"]


class TestTransform:
    def test_worked_example_weights(self, toy_docs):
        vec = TfidfVectorizer().fit(toy_docs)
        row = vec.transform([toy_docs[0]]).toarray()[0]
        acha, drama = vec.vocabulary_["acha"], vec.vocabulary_["drama"]
        assert row[acha] == pytest.approx(INV_SQRT2, abs=1e-9)
        assert row[drama] == pytest.approx(INV_SQRT2, abs=1e-9)
        assert row[vec.vocabulary_["bura"]] == 0.0

    def test_out_of_vocabulary_ignored(self, toy_docs):
        vec = TfidfVectorizer().fit(toy_docs)
        row = vec.transform([["unseen", "words"]]).toarray()[0]
        assert np.all(row == 0.0)

    def test_empty_doc_is_zero_vector(self, toy_docs):
        vec = TfidfVectorizer().fit(toy_docs)
        assert vec.transform([[]]).nnz == 0

    def test_unfitted_raises(self):
        with pytest.raises(NotFittedError):
            TfidfVectorizer().transform([["acha"]])

    def test_rows_unit_norm_or_zero(self):
        rng = np.random.default_rng(3)
        terms = [f"t{i}" for i in range(30)]
        docs = [list(rng.choice(terms, size=int(rng.integers(1, 9)))) for _ in range(60)]
        docs.append([])
        vec = TfidfVectorizer(max_features=20).fit(docs)
        X = vec.transform(docs)
        norms = np.sqrt(np.asarray(X.multiply(X).sum(axis=1)).ravel())
        for norm in norms:
            assert norm == pytest.approx(1.0, abs=1e-9) or norm == 0.0

    def test_counts_scale_weights(self, toy_docs):
        vec = TfidfVectorizer().fit(toy_docs)
        row = vec.transform([["acha", "acha", "bura"]]).toarray()[0]
        acha, bura = vec.vocabulary_["acha"], vec.vocabulary_["bura"]
        # raw weights 2*idf and 1*idf -> normalized (2, 1)/sqrt(5)
        assert row[acha] == pytest.approx(2.0 / math.sqrt(5.0), abs=1e-9)
        assert row[bura] == pytest.approx(1.0 / math.sqrt(5.0), abs=1e-9)

    def test_batch_matches_doc_order(self, toy_docs):
        vec = TfidfVectorizer().fit(toy_docs)
        X = vec.transform(toy_docs)
        assert X.shape == (3, 3)
        for i, doc in enumerate(toy_docs):
            np.testing.assert_array_equal(
                X[i].toarray(), vec.transform([doc]).toarray()
            )

    def test_empty_sequence_keeps_dimension(self, toy_docs):
        vec = TfidfVectorizer().fit(toy_docs)
        X = vec.transform([])
        assert X.shape == (0, 3)

    def test_transform_does_not_touch_vocabulary(self, toy_docs):
        vec = TfidfVectorizer().fit(toy_docs)
        before = dict(vec.vocabulary_)
        vec.transform([["new", "tokens", "acha"]])
        assert vec.vocabulary_ == before

    def test_indices_sorted_strictly_increasing(self):
        X, _ = random_tfidf_instance(11, n_docs=20, vocab_size=12, doc_len=6)
        for i in range(X.shape[0]):
            idx = X.indices[X.indptr[i] : X.indptr[i + 1]]
            assert np.all(np.diff(idx) > 0)


class TestSerialization:
    def test_round_trip_schema_and_behavior(self, toy_docs, tmp_path):
        vec = TfidfVectorizer().fit(toy_docs)
        path = tmp_path / "tfidf.json"
        save_tfidf(vec, path)
        payload = json.loads(path.read_text())
        assert set(payload) == {"terms", "df", "idf", "N", "max_features"}
        assert payload["N"] == 3
        loaded = load_tfidf(path)
        probe = [["acha", "drama", "acha"], ["bura"], []]
        np.testing.assert_array_equal(
            loaded.transform(probe).toarray(), vec.transform(probe).toarray()
        )

    def test_word_frequency_dump(self, toy_docs, tmp_path):
        vec = TfidfVectorizer().fit(toy_docs)
        path = tmp_path / "freq.csv"
        write_word_frequencies(vec, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "term,count"
        assert lines[1:] == ["acha,3", "bura,3", "drama,2"]
