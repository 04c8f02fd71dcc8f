"""Strongly regular graphs attached to two-weight codes.

The graph of a two-weight code has the cosets of the zero-weight
subcode as vertices, two cosets being adjacent when their difference
has the smaller weight.  Measured parameters come from brute-force
common-neighbour counting; predicted parameters come from closed forms
in the weights and frequencies.  The same machinery certifies partial
difference sets inside an ambient module and the equivalence between
two-weight codes and such sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .codes import support_with_zero, two_weight_profile
from .errors import IdentityCheckError, PreconditionError
from .spans import decode_vectors, encode_vectors, is_submodule, span


@dataclass(frozen=True)
class SrgParams:
    vertices: int
    degree: int
    common_adjacent: int
    common_nonadjacent: int
    trivial: bool

    def __post_init__(self):
        n, k = self.vertices, self.degree
        lam, mu = self.common_adjacent, self.common_nonadjacent
        if k * (k - lam - 1) != (n - k - 1) * mu:
            raise IdentityCheckError(
                "strongly regular parameters are infeasible",
                witness={"vertices": n, "degree": k, "lambda": lam,
                         "mu": mu})

    def as_tuple(self):
        return (self.vertices, self.degree, self.common_adjacent,
                self.common_nonadjacent)


def measure_srg(adjacency):
    """Certify a 0/1 adjacency matrix as strongly regular by direct
    common-neighbour counting; raises IdentityCheckError otherwise."""
    A = np.asarray(adjacency, dtype=np.int64)
    N = len(A)
    if N == 0 or (A != A.T).any() or A.diagonal().any():
        raise PreconditionError("adjacency must be symmetric, hollow, "
                                "and nonempty")
    degrees = A.sum(axis=1)
    if not (degrees == degrees[0]).all():
        raise IdentityCheckError(
            "graph is not regular",
            witness={"degrees": sorted(set(int(d) for d in degrees))})
    K = int(degrees[0])
    M = A @ A
    off = ~np.eye(N, dtype=bool)
    adj = (A == 1) & off
    non = (A == 0) & off
    if adj.any():
        lam_vals = np.unique(M[adj])
        if len(lam_vals) != 1:
            raise IdentityCheckError(
                "adjacent pairs disagree on common neighbours",
                witness={"values": lam_vals.tolist()})
        lam = int(lam_vals[0])
    else:
        lam = 0
    if non.any():
        mu_vals = np.unique(M[non])
        if len(mu_vals) != 1:
            raise IdentityCheckError(
                "nonadjacent pairs disagree on common neighbours",
                witness={"values": mu_vals.tolist()})
        mu = int(mu_vals[0])
    else:
        # complete graph: every pair adjacent
        mu = 0
        lam = K - 1 if N > 1 else 0
    trivial = mu == 0 or mu == K
    return SrgParams(N, K, lam, mu, trivial)


def predicted_srg(profile):
    """Closed-form graph parameters of a modular two-weight code."""
    if profile.index is None:
        raise PreconditionError(
            "graph parameter prediction needs a modular code")
    n = profile.n
    w1, w2 = profile.w1, profile.w2
    if profile.size % profile.b0 != 0:
        raise IdentityCheckError(
            "zero-weight subcode size does not divide the code size",
            witness={"size": profile.size, "b0": profile.b0})
    N = profile.size // profile.b0
    K = ((w2 - n) * N - w2) / (w2 - w1)
    lam = (K * (w1 * w1 / n - 2 * w1) + w2 * (K - 1)) / (w2 - w1)
    mu = K * (w1 * w2 / n - w1) / (w2 - w1)
    values = {"degree": K, "lambda": lam, "mu": mu}
    for name, v in values.items():
        if v.denominator != 1 or v < 0:
            raise IdentityCheckError(
                f"predicted {name} is not a nonnegative integer",
                witness={name: str(v)})
    trivial = w1 == n
    if trivial != (mu == K):
        raise IdentityCheckError(
            "triviality criterion disagrees with mu = degree",
            witness={"w1": str(w1), "n": n, "mu": str(mu), "K": str(K)})
    return SrgParams(N, int(K), int(lam), int(mu), trivial)


def predicted_dual_srg(profile):
    """Closed-form graph parameters on the dual side: vertex count is
    the code size, degree is length / index."""
    if profile.index is None:
        raise PreconditionError(
            "dual graph parameter prediction needs a modular code")
    r = profile.index
    n, w1, w2 = profile.n, profile.w1, profile.w2
    size = profile.size
    N = Fraction(size)
    K = n / r
    mu = w1 * w2 / (r * r * size)
    lam = (2 * n - w1 - w2) / r + mu
    values = {"vertices": N, "degree": K, "lambda": lam, "mu": mu}
    for name, v in values.items():
        if v.denominator != 1 or v < 0:
            raise IdentityCheckError(
                f"predicted dual {name} is not a nonnegative integer",
                witness={name: str(v)})
    trivial = w1 == n
    return SrgParams(int(N), int(K), int(lam), int(mu), trivial)


@dataclass
class CosetGraph:
    code: object
    representatives: np.ndarray
    adjacency: np.ndarray
    profile: object


def build_coset_graph(code):
    """The graph on cosets of the zero-weight subcode, adjacency given
    by the smaller weight.  Verifies that adjacency does not depend on
    the chosen representatives."""
    profile = two_weight_profile(code)
    if profile is None:
        raise PreconditionError("coset graph needs a two-weight code")
    ring = code.ring
    num = code.table.numerators
    D = code.denominator
    zero_words = code.zero_weight_words()

    # shifting by a zero-weight word must not change any word's weight
    for z in zero_words:
        shifted = num[ring.add_table[code.words, z[None, :]]].sum(axis=1)
        if not (shifted == code.word_numerators).all():
            raise IdentityCheckError(
                "weights change under zero-weight shifts",
                witness={"shift": z.tolist()})

    zero_keys = np.sort(encode_vectors(zero_words, ring.order))
    all_keys = code.word_keys
    # representative of each coset: lexicographically least member
    coset_min = {}
    for idx in range(code.size):
        w = code.words[idx]
        members = ring.add_table[zero_words, w[None, :]]
        least = int(encode_vectors(members, ring.order).min())
        if least == int(all_keys[idx]):
            coset_min[least] = idx
    reps_idx = np.array([coset_min[k] for k in sorted(coset_min)],
                        dtype=np.int64)
    reps = code.words[reps_idx]
    if len(reps) * len(zero_words) != code.size:
        raise IdentityCheckError(
            "cosets of the zero-weight subcode do not tile the code",
            witness={"cosets": len(reps), "b0": len(zero_words)})

    neg_reps = ring.neg_table[reps]
    w1num = int(profile.w1 * D)
    count = len(reps)
    adjacency = np.zeros((count, count), dtype=np.int8)
    block = max(1, (1 << 22) // max(1, count * code.n))
    for start in range(0, count, block):
        chunk = reps[start:start + block]
        diffs = ring.add_table[chunk[:, None, :], neg_reps[None, :, :]]
        wnum = num[diffs].sum(axis=2)
        adjacency[start:start + block] = wnum == w1num
    np.fill_diagonal(adjacency, 0)
    if (adjacency != adjacency.T).any():
        raise IdentityCheckError("coset adjacency is not symmetric")
    return CosetGraph(code, reps, adjacency, profile)


def check_trivial_structure(graph):
    """Confirm the structural description of trivial graphs: the graph
    is trivial exactly when the zero- and larger-weight words form a
    subcode, and in that case the cosets of that subcode are the
    maximal cocliques (the graph is complete multipartite)."""
    code = graph.code
    profile = graph.profile
    ring = code.ring
    D = code.denominator
    w2num = int(profile.w2 * D)
    sub_rows = code.words[(code.word_numerators == 0)
                          | (code.word_numerators == w2num)]
    keys = np.sort(encode_vectors(sub_rows, ring.order))
    sums = ring.add_table[sub_rows[:, None, :], sub_rows[None, :, :]]
    skeys = encode_vectors(sums.reshape(-1, code.n), ring.order)
    pos = np.clip(np.searchsorted(keys, skeys), 0, len(keys) - 1)
    closed = bool((keys[pos] == skeys).all())
    if closed != profile.trivial:
        raise IdentityCheckError(
            "triviality disagrees with the zero/larger-weight subcode test",
            witness={"closed": closed, "trivial": profile.trivial})
    if not profile.trivial:
        return False
    # cosets of the subcode partition the vertices into cocliques:
    # adjacency must hold exactly across distinct parts
    reps = graph.representatives
    part = np.empty(len(reps), dtype=np.int64)
    for i, rep in enumerate(reps):
        members = ring.add_table[sub_rows, rep[None, :]]
        part[i] = int(encode_vectors(members, ring.order).min())
    same = part[:, None] == part[None, :]
    expected = (~same).astype(np.int8)
    if (graph.adjacency != expected).any():
        i, j = np.argwhere(graph.adjacency != expected)[0]
        raise IdentityCheckError(
            "cocliques are not the cosets of the trivial subcode",
            witness={"i": int(i), "j": int(j),
                     "same_part": bool(same[i, j]),
                     "adjacent": bool(graph.adjacency[i, j])})
    return True


# ---------------------------------------------------------------- PDS


@dataclass(frozen=True)
class PdsCertificate:
    group_size: int
    set_size: int
    lam: int
    mu: int

    def srg_params(self):
        trivial = self.mu == 0 or self.mu == self.set_size
        return SrgParams(self.group_size, self.set_size, self.lam,
                         self.mu, trivial)


def cayley_graph(ring, group_rows, connection_rows):
    """Adjacency matrix of the Cayley graph on the given abelian group
    of vectors with the given symmetric connection set."""
    order = ring.order
    gkeys = encode_vectors(group_rows, order)
    lookup = {int(k): i for i, k in enumerate(gkeys)}
    n = len(group_rows)
    A = np.zeros((n, n), dtype=np.int64)
    neg = ring.neg_table
    for d in connection_rows:
        shifted = ring.add_table[group_rows, d[None, :]]
        keys = encode_vectors(shifted, order)
        for i, k in enumerate(keys):
            j = lookup.get(int(k))
            if j is None:
                raise PreconditionError(
                    "connection set does not preserve the group")
            A[i, j] = 1
    return A


def pds_check(ring, group_rows, subset_rows):
    """Brute-force partial difference set test: count how often each
    group element occurs as a difference of two distinct subset
    elements.  Returns a certificate, or None with no claim when the
    counts are not constant on the subset and on its complement."""
    order = ring.order
    group_rows = np.asarray(group_rows, dtype=np.int32)
    subset_rows = np.asarray(subset_rows, dtype=np.int32)
    m = len(subset_rows)
    if m == 0:
        return None
    gkeys = np.sort(encode_vectors(group_rows, order))
    skeys = np.sort(encode_vectors(subset_rows, order))
    zero_key = 0
    if np.searchsorted(skeys, zero_key) < len(skeys) and skeys[
            np.searchsorted(skeys, zero_key)] == zero_key:
        return None
    neg_rows = decode_vectors(
        np.sort(encode_vectors(ring.neg_table[subset_rows], order)),
        order, subset_rows.shape[1])
    if not (encode_vectors(neg_rows, order) == skeys).all():
        return None

    diffs = ring.add_table[subset_rows[:, None, :],
                           ring.neg_table[subset_rows][None, :, :]]
    dkeys = encode_vectors(diffs.reshape(m * m, -1), order)
    dkeys = dkeys[dkeys != zero_key]
    pos = np.searchsorted(gkeys, dkeys)
    if (pos >= len(gkeys)).any() or (gkeys[pos] != dkeys).any():
        raise PreconditionError("differences leave the group")
    counts = np.bincount(pos, minlength=len(gkeys))

    in_subset = np.isin(gkeys, skeys)
    is_zero = gkeys == zero_key
    lam_counts = np.unique(counts[in_subset])
    mu_mask = ~in_subset & ~is_zero
    mu_counts = np.unique(counts[mu_mask])
    if len(lam_counts) != 1:
        return None
    if mu_mask.any() and len(mu_counts) != 1:
        return None
    mu = int(mu_counts[0]) if mu_mask.any() else 0
    return PdsCertificate(len(group_rows), m, int(lam_counts[0]), mu)


# ------------------------------------------------------- equivalence


@dataclass(frozen=True)
class EquivalenceReport:
    two_weight: bool
    pds: PdsCertificate
    omega_with_zero_submodule: bool
    complement_submodule: bool
    omega_size: int
    ambient_size: int


def column_module(code):
    """The right submodule of R^k generated by the generator columns."""
    cols = [tuple(int(v) for v in code.generator[:, j])
            for j in range(code.n)]
    return span(code.ring, cols, side="right")


def equivalence_check(code):
    """Certify the two-way correspondence for a modular code with
    trivial zero-weight subcode: the code is two-weight exactly when
    the occurring points form a partial difference set in the column
    module whose union with zero is not a submodule.  Also certifies
    the two companion statements: union-with-zero is a submodule
    exactly for one-weight codes, and the complement inside the column
    module is a submodule exactly for two-weight codes whose smaller
    weight equals the length."""
    from .codes import modular_index

    ring = code.ring
    if modular_index(code) is None:
        raise PreconditionError("equivalence check needs a modular code")
    if code.b0 != 1:
        raise PreconditionError(
            "equivalence check needs a trivial zero-weight subcode")

    module = column_module(code)
    supp0 = support_with_zero(code)
    supp0_keys = encode_vectors(supp0, ring.order)
    omega = supp0[supp0_keys != 0]

    if not module.contains_keys(np.sort(supp0_keys)).all():
        raise IdentityCheckError(
            "occurring points leave the column module",
            witness={"generator": code.generator.tolist()})

    cert = pds_check(ring, module.elements, omega)
    omega_sub = is_submodule(ring, supp0, "right")
    module_keys = module.keys
    comp_mask = ~np.isin(module_keys, np.sort(encode_vectors(omega,
                                                             ring.order)))
    complement = module.elements[comp_mask]
    # the bare zero module (points fill the ambient module) is the
    # degenerate case belonging to one-weight codes; the submodule test
    # here asks for a nonzero submodule
    comp_sub = len(complement) > 1 and is_submodule(ring, complement,
                                                    "right")

    nonzero_weights = [v for v in code.weight_values() if v != 0]
    is_two = len(nonzero_weights) == 2
    is_one = len(nonzero_weights) == 1

    side_code = is_two
    side_sets = cert is not None and not omega_sub
    if side_code != side_sets:
        raise IdentityCheckError(
            "two-weight / difference-set equivalence fails",
            witness={"generator": code.generator.tolist(),
                     "two_weight": is_two,
                     "pds": cert is not None,
                     "omega_with_zero_submodule": omega_sub})
    if omega_sub != is_one:
        raise IdentityCheckError(
            "one-weight / submodule equivalence fails",
            witness={"generator": code.generator.tolist(),
                     "one_weight": is_one,
                     "omega_with_zero_submodule": omega_sub})
    trivial_two = False
    if is_two:
        profile = two_weight_profile(code)
        trivial_two = profile.trivial
    if comp_sub != trivial_two:
        raise IdentityCheckError(
            "complement submodule test disagrees with triviality",
            witness={"generator": code.generator.tolist(),
                     "complement_submodule": comp_sub,
                     "trivial_two_weight": trivial_two})

    if is_two:
        profile = two_weight_profile(code)
        predicted = predicted_dual_srg(profile)
        measured = cert.srg_params()
        if measured != predicted:
            raise IdentityCheckError(
                "difference-set graph parameters disagree with the "
                "dual closed forms",
                witness={"measured": measured.as_tuple(),
                         "predicted": predicted.as_tuple()})

    return EquivalenceReport(
        two_weight=is_two, pds=cert,
        omega_with_zero_submodule=omega_sub,
        complement_submodule=comp_sub,
        omega_size=len(omega), ambient_size=module.size)
