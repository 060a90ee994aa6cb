"""Smoke tests for the python bindings."""

import numpy as np
import pytest

import cyldom


def test_word_counts():
    assert cyldom.count_correct_words(10) == 8119
    words = cyldom.correct_words(2)
    assert len(words) == 7
    assert "02" not in words and "20" not in words
    assert words == sorted(words)
    assert cyldom.word_zeros("010") == 2


def test_follow_relation_and_labels():
    assert cyldom.can_follow("00", "00")
    assert not cyldom.can_follow("00", "22")
    nd = cyldom.newly_dominated("22", "00")
    assert nd["count"] == 7
    assert cyldom.arc_label("22", "00") == 3
    with pytest.raises(ValueError):
        cyldom.arc_label("00", "22")


def test_tropical_matmul():
    a = cyldom.TropicalMatrix.from_rows([[0, None], [3, 1]])
    c = cyldom.matmul(a, a)
    assert c[0, 0] == 0
    assert c[0, 1] is None
    assert c[1, 0] == 3
    assert c[1, 1] == 2
    assert cyldom.min_diagonal(c) == 0
    assert cyldom.matrix_equal_shifted(a, cyldom.scalar_shift(2, a)) == 2


def test_numpy_view():
    m = cyldom.build_transfer_matrix(2)
    arr = np.asarray(m)
    assert arr.shape == (7, 7)
    assert arr.dtype == np.uint32
    assert (arr == cyldom.INF).any()


def test_tmx_roundtrip(tmp_path):
    m = cyldom.build_transfer_matrix(3)
    path = str(tmp_path / "a.tmx")
    cyldom.write_matrix(m, path)
    back = cyldom.read_matrix(path)
    assert back == m
    assert back.meta_rows == 3
    assert back.meta_power == 1


def test_scan_matches_oracle():
    table = cyldom.scan_l(2, 9)
    for n in range(3, 10):
        assert table.at(n) == cyldom.brute_force_wasted_min(2, n)["wasted"]
    assert table.recurrence is None


def test_bound_report():
    report = cyldom.bound_report(20, 30)
    assert report["lower_new"] == 132
    assert report["known_gamma"] == 132
    assert report["lower_grid"] == 128
    assert report["upper_construction"] is None
    assert cyldom.theorem_bound(20, 30) == 132
    assert cyldom.construction_upper_bound(22, 18) == (96, False)


def test_pattern_and_domination():
    vertices = cyldom.diagonal_pattern_dominating_set(12, 10)
    assert len(vertices) == 28
    assert cyldom.is_dominating(12, 10, vertices)


def test_encode_decode():
    members = [(0, 0), (1, 2)]
    words = cyldom.encode_words(2, 4, members)
    assert len(words) == 4
    assert sorted(cyldom.decode_words(words)) == members


def test_verify_suite():
    ok, report = cyldom.verify(2, 4)
    assert ok
    assert "FAIL" not in report
