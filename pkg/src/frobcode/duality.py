"""Dual two-weight codes and the certification of their parameters.

The dual of a two-weight code collects the smaller-weight codewords as
the rows of a matrix and takes the right code generated by its columns.
Right codes are handled as left codes over the opposite ring, whose
weight table coincides with the original (the unit group and character
are shared).  Every claim about the dual is certified by direct
enumeration: size, both weights, modularity of index one, the graph
parameters, and the three-way classification of message vectors by the
image of the primal generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .codes import LinearCode, build_code, modular_index, two_weight_profile
from .errors import IdentityCheckError, PreconditionError
from .graphs import (
    SrgParams,
    build_coset_graph,
    measure_srg,
    predicted_dual_srg,
    predicted_srg,
)
from .homweight import weight_table
from .rings import opposite_ring
from .spans import apply_matrix, encode_vectors, enumerate_vectors, span


def smaller_class_matrix(code):
    """Rows of the matrix are the smaller-weight codewords in sorted
    word order."""
    profile = two_weight_profile(code)
    if profile is None:
        raise PreconditionError("dual construction needs a two-weight code")
    w1num = int(profile.w1 * code.denominator)
    return code.words_of_numerator(w1num)


def build_dual(code, cap=None):
    """The dual as a left code over the opposite ring: transposing the
    smaller-weight matrix turns its right column span into a left row
    span."""
    m1 = smaller_class_matrix(code)
    op = opposite_ring(code.ring)
    return build_code(op, m1.T.copy(), cap)


@dataclass(frozen=True)
class DualReport:
    dual_size: int
    w1_dual: Fraction
    w2_dual: Fraction
    b1_dual: int
    b2_dual: int
    srg: SrgParams
    trivial: bool
    kernel_size: int
    class_counts: tuple


def dual_pipeline(code, cap=None):
    """Build the dual of a modular two-weight code with trivial
    zero-weight subcode and certify every predicted property against
    direct enumeration.  Returns a report; raises IdentityCheckError on
    the first discrepancy."""
    profile = two_weight_profile(code, require_modular=True)
    if profile is None:
        raise PreconditionError("dual pipeline needs a two-weight code")
    if profile.b0 != 1:
        raise PreconditionError(
            "dual pipeline needs a trivial zero-weight subcode")
    ring = code.ring
    r = profile.index
    n, w1, w2 = profile.n, profile.w1, profile.w2
    size = profile.size

    w1_dual = (w2 - n - r) * size / (w2 - w1)
    w1_dual_alt = Fraction(profile.b1) * w1 / n
    if w1_dual != w1_dual_alt:
        raise IdentityCheckError(
            "the two closed forms for the smaller dual weight disagree",
            witness={"first": str(w1_dual), "second": str(w1_dual_alt)})
    w2_dual = (w2 - n) * size / (w2 - w1)

    dual = build_dual(code, cap)
    if dual.size != size:
        raise IdentityCheckError(
            "dual size differs from the code size",
            witness={"dual": dual.size, "code": size})
    expected_values = {Fraction(0), w1_dual, w2_dual}
    if set(dual.weight_values()) != expected_values:
        raise IdentityCheckError(
            "dual weights differ from their closed forms",
            witness={"measured": [str(v) for v in dual.weight_values()],
                     "expected": sorted(str(v) for v in expected_values)})
    if dual.b0 != 1:
        raise IdentityCheckError(
            "dual zero-weight subcode is not trivial",
            witness={"b0": dual.b0})
    if modular_index(dual) != 1:
        raise IdentityCheckError(
            "dual is not modular of index one",
            witness={"index": str(modular_index(dual))})

    dual_profile = two_weight_profile(dual, require_modular=True)
    graph = build_coset_graph(dual)
    measured = measure_srg(graph.adjacency)
    predicted = predicted_dual_srg(profile)
    also_predicted = predicted_srg(dual_profile)
    if measured != predicted or measured != also_predicted:
        raise IdentityCheckError(
            "dual graph parameters disagree with the closed forms",
            witness={"measured": measured.as_tuple(),
                     "from_primal": predicted.as_tuple(),
                     "from_dual_profile": also_predicted.as_tuple()})
    if measured.trivial != (w1 == n):
        raise IdentityCheckError(
            "dual triviality disagrees with the primal criterion",
            witness={"dual_trivial": measured.trivial, "w1": str(w1),
                     "n": n})

    kernel_size, class_counts = _check_message_classification(
        code, profile, w1_dual, w2_dual, cap)
    _check_smaller_class_spans(code)

    return DualReport(
        dual_size=dual.size, w1_dual=w1_dual, w2_dual=w2_dual,
        b1_dual=dual_profile.b1, b2_dual=dual_profile.b2,
        srg=measured, trivial=measured.trivial,
        kernel_size=kernel_size, class_counts=class_counts)


def _row_point_ids(ring, rows):
    units = ring.units_array
    orbits = ring.mul_table[rows[:, None, :], units[None, :, None]]
    keys = encode_vectors(orbits, ring.order)
    return keys.min(axis=1)


def _check_message_classification(code, profile, w1_dual, w2_dual, cap):
    """Every message vector lands in one of three classes: kernel of
    the generator (dual word zero), generator image on an occurring
    point (dual weight the smaller closed form), or neither (the larger
    closed form)."""
    from .spans import canonical_point_id

    ring = code.ring
    m1 = smaller_class_matrix(code)
    table = weight_table(ring)
    num = table.numerators
    D = table.denominator
    w1d_num = int(w1_dual * D)
    w2d_num = int(w2_dual * D)
    column_pids = np.unique(np.array(
        [canonical_point_id(ring, code.generator[:, j], "right")
         for j in range(code.n)], dtype=np.int64))

    ys = enumerate_vectors(ring.order, code.n, cap)
    counts = [0, 0, 0]
    block = max(1, (1 << 21) // max(1, code.size))
    for start in range(0, len(ys), block):
        chunk = ys[start:start + block]
        img = apply_matrix(ring, code.generator, chunk)
        dual_words = apply_matrix(ring, m1, chunk)
        wnum = num[dual_words].sum(axis=1)
        img_zero = (img == 0).all(axis=1)
        pids = _row_point_ids(ring, img)
        on_point = np.isin(pids, column_pids) & ~img_zero
        other = ~img_zero & ~on_point
        bad = None
        if (wnum[img_zero] != 0).any():
            bad = ("kernel", int(np.flatnonzero(img_zero)[
                np.flatnonzero(wnum[img_zero] != 0)[0]]))
        elif (wnum[on_point] != w1d_num).any():
            bad = ("on-point", int(np.flatnonzero(on_point)[
                np.flatnonzero(wnum[on_point] != w1d_num)[0]]))
        elif (wnum[other] != w2d_num).any():
            bad = ("off-point", int(np.flatnonzero(other)[
                np.flatnonzero(wnum[other] != w2d_num)[0]]))
        if bad is not None:
            cls, at = bad
            raise IdentityCheckError(
                f"dual word weight disagrees with its {cls} class",
                witness={"y": chunk[at].tolist(),
                         "weight": str(Fraction(int(wnum[at]), D))})
        counts[0] += int(img_zero.sum())
        counts[1] += int(on_point.sum())
        counts[2] += int(other.sum())
    if counts[1] == 0 or counts[2] == 0:
        raise IdentityCheckError(
            "one of the two dual weights never occurs",
            witness={"counts": counts})
    return counts[0], tuple(counts)


def _check_smaller_class_spans(code):
    """The smaller-weight codewords generate the whole code."""
    m1 = smaller_class_matrix(code)
    gens = [tuple(int(v) for v in row) for row in m1]
    spanned = span(code.ring, gens, side="left")
    if spanned.size != code.size or not (
            spanned.keys == code.word_keys).all():
        raise IdentityCheckError(
            "smaller-weight codewords do not generate the code",
            witness={"spanned": spanned.size, "code": code.size})
