"""Dual two-weight codes: frozen small examples, the full certification
pipeline, and the double dual."""

from fractions import Fraction

import numpy as np
import pytest

from frobcode.codes import build_code, two_weight_profile
from frobcode.duality import (
    build_dual,
    dual_pipeline,
    smaller_class_matrix,
)
from frobcode.errors import PreconditionError
from frobcode.homweight import weight_table
from frobcode.rings import opposite_ring, ring_from_text


def make(text, rows):
    ring = ring_from_text(text)
    return ring, build_code(ring, np.array(rows, dtype=np.int32))


def test_smaller_class_matrix_frozen():
    ring, code = make("GF(3)", [[1, 0], [0, 1]])
    m1 = smaller_class_matrix(code)
    assert [tuple(r) for r in m1.tolist()] == [
        (0, 1), (0, 2), (1, 0), (2, 0)]


def test_dual_histogram_frozen():
    ring, code = make("GF(3)", [[1, 0], [0, 1]])
    dual = build_dual(code)
    assert dual.weight_distribution() == {
        Fraction(0): 1, Fraction(3): 4, Fraction(6): 4}
    assert dual.n == 4
    assert dual.k == 2


def test_pipeline_report_frozen():
    ring, code = make("GF(3)", [[1, 0], [0, 1]])
    report = dual_pipeline(code)
    assert report.dual_size == 9
    assert (report.w1_dual, report.w2_dual) == (3, 6)
    assert (report.b1_dual, report.b2_dual) == (4, 4)
    assert report.srg.as_tuple() == (9, 4, 1, 2)
    assert not report.trivial
    assert report.kernel_size == 1
    assert report.class_counts == (1, 4, 4)


def test_double_dual_parameters_repeat():
    ring, code = make("GF(3)", [[1, 0], [0, 1]])
    dual = build_dual(code)
    double = build_dual(dual)
    p1 = two_weight_profile(dual, require_modular=True)
    p2 = two_weight_profile(double, require_modular=True)
    assert (p1.w1, p1.w2, p1.size) == (p2.w1, p2.w2, p2.size)
    assert dual_pipeline(dual).srg.as_tuple() == (9, 4, 1, 2)


def test_trivial_code_dual_is_trivial():
    ring, code = make("Z4", [[1, 3]])
    dual = build_dual(code)
    assert dual.weight_distribution() == {
        Fraction(0): 1, Fraction(2): 2, Fraction(4): 1}
    report = dual_pipeline(code)
    assert report.trivial
    assert report.srg.as_tuple() == (4, 2, 0, 2)


def test_gf4_dual():
    ring, code = make("GF(4)", [[1, 0], [0, 1]])
    report = dual_pipeline(code)
    assert report.srg.as_tuple() == (16, 6, 2, 2)
    assert (report.w1_dual, report.w2_dual) == (4, 8)


def test_pipeline_preconditions():
    ring, one_weight = make("Z4", [[1, 2, 3]])
    with pytest.raises(PreconditionError):
        dual_pipeline(one_weight)
    ring, fat_zero = make("prod(Z2,Z2)", [[1, 0], [0, 1]])
    assert fat_zero.b0 == 4
    with pytest.raises(PreconditionError):
        dual_pipeline(fat_zero)
    ring, non_modular = make("Z4", [[1, 1, 1, 2]])
    with pytest.raises(PreconditionError):
        dual_pipeline(non_modular)


def test_opposite_ring_weights_match():
    ring = ring_from_text("M2(GF(2))")
    op = opposite_ring(ring)
    assert (weight_table(ring).numerators
            == weight_table(op).numerators).all()
    assert weight_table(ring).denominator == weight_table(op).denominator
