"""The coupled Koszul complex behind the quotient formulas.

Term ranks are pure combinatorics; for specialized systems the
differentials are built explicitly and their ranks certify exactness,
which happens precisely when the resultant does not vanish.
"""

import itertools

from ..combinat import critical_degree, monomial_basis
from ..corering import ParamRing, scalar_zero
from ..linalg import LabeledMatrix, rank_over_fractions
from .assembly import _coeff_of_shifted, full_assembly


def _index_subsets(n, size):
    return list(itertools.combinations(range(1, n + 1), size))


def _term_labels(ds, t, k):
    """Basis labels of the complex term in slot k, for -n <= k <= n-1.

    Slot -1 carries the dual coefficient space next to the first
    multiplier block, slot 0 the degree-t monomials next to the dual
    multiplier block; these two reuse the assembly's label shapes so
    the middle differential is exactly the unrestricted assembly.
    """
    n = ds.n
    tn = critical_degree(ds)
    d = ds.degrees
    if k <= -2:
        labels = []
        for sub in _index_subsets(n, -k):
            u = t - sum(d[i - 1] for i in sub)
            labels += [("k", sub, g) for g in monomial_basis(n, u)]
        return labels
    if k == -1:
        labels = [("slice", g) for g in monomial_basis(n, tn - t)]
        labels += [("mult", j, g) for j in range(1, n + 1)
                   for g in monomial_basis(n, t - d[j - 1])]
        return labels
    if k == 0:
        labels = [("mono", e) for e in monomial_basis(n, t)]
        labels += [("dual", j, g) for j in range(1, n + 1)
                   for g in monomial_basis(n, tn - t - d[j - 1])]
        return labels
    labels = []
    for sub in _index_subsets(n, k + 1):
        u = tn - t - sum(d[i - 1] for i in sub)
        labels += [("dualk", sub, g) for g in monomial_basis(n, u)]
    return labels


def _as_pair(label):
    """Normalize any multiplier-flavored label to (index tuple, exponent)."""
    if label[0] in ("k", "dualk"):
        return label[1], label[2]
    return (label[1],), label[2]


def _koszul_scalar(sys, big, g, small, m, zero):
    """One entry of the downward Koszul differential: the coefficient
    with its alternating sign when small is big minus one index, zero
    otherwise."""
    if len(small) != len(big) - 1 or not set(small) <= set(big):
        return zero
    dropped = (set(big) - set(small)).pop()
    pos = big.index(dropped)
    c = _coeff_of_shifted(sys.polys[dropped - 1], m, g)
    return c if pos % 2 == 0 else -c


def _differential(sys, t, k):
    """The matrix of the map from slot k to slot k+1."""
    ds = sys.ds
    if k == -1:
        return full_assembly(sys, t)
    cols = _term_labels(ds, t, k)
    rows = _term_labels(ds, t, k + 1)
    zero = scalar_zero(sys.domain)
    grid = []
    if k <= -2:
        for rl in rows:
            if rl[0] == "slice":
                grid.append([zero] * len(cols))
                continue
            small, m = _as_pair(rl)
            grid.append([_koszul_scalar(sys, cl[1], cl[2], small, m, zero)
                         for cl in cols])
    else:
        # dual side: transposed Koszul maps at the complementary degree
        for rl in rows:
            big, g = _as_pair(rl)
            row = []
            for cl in cols:
                if cl[0] == "mono":
                    row.append(zero)
                else:
                    small, m = _as_pair(cl)
                    row.append(_koszul_scalar(sys, big, g, small, m, zero))
            grid.append(row)
    return LabeledMatrix(rows, cols, grid, sys.domain)


class ComplexProfile:
    """Term ranks of the coupled complex at degree t, and differential
    ranks when the system is specialized."""

    __slots__ = ("t", "n", "term_ranks", "differential_ranks")

    def __init__(self, t, n, term_ranks, differential_ranks):
        self.t = t
        self.n = n
        self.term_ranks = term_ranks
        self.differential_ranks = differential_ranks

    def __repr__(self):
        spine = "->".join(str(self.term_ranks[k])
                          for k in range(-self.n, self.n))
        return "ComplexProfile(t=%d, %s)" % (self.t, spine)


class ExactnessReport:
    """Rank bookkeeping for one specialized system at degree t: the
    complex is exact exactly when incoming plus outgoing ranks exhaust
    every term."""

    __slots__ = ("t", "term_ranks", "differential_ranks", "exact_at",
                 "is_exact")

    def __init__(self, t, term_ranks, differential_ranks, exact_at):
        self.t = t
        self.term_ranks = term_ranks
        self.differential_ranks = differential_ranks
        self.exact_at = exact_at
        self.is_exact = all(exact_at.values())

    def __repr__(self):
        return "ExactnessReport(t=%d, exact=%r)" % (self.t, self.is_exact)


def complex_profile(sys, t):
    """Term ranks at degree t (0 <= t <= critical degree); for
    specialized systems the differential ranks are computed as well."""
    ds = sys.ds
    n = ds.n
    tn = critical_degree(ds)
    if not 0 <= t <= tn:
        raise ValueError("the coupled complex needs 0 <= t <= %d" % tn)
    term_ranks = {k: len(_term_labels(ds, t, k)) for k in range(-n, n)}
    differential_ranks = None
    if not isinstance(sys.domain, ParamRing):
        differential_ranks = {k: rank_over_fractions(_differential(sys, t, k))
                              for k in range(-n, n - 1)}
    return ComplexProfile(t, n, term_ranks, differential_ranks)


def exactness_check(sys, t):
    """Build every differential of the specialized complex, verify the
    consecutive compositions vanish, and report rank exactness at each
    slot."""
    ds = sys.ds
    n = ds.n
    tn = critical_degree(ds)
    if isinstance(sys.domain, ParamRing):
        raise TypeError("exactness_check expects a specialized system")
    if not 0 <= t <= tn:
        raise ValueError("the coupled complex needs 0 <= t <= %d" % tn)
    term_ranks = {k: len(_term_labels(ds, t, k)) for k in range(-n, n)}
    maps = {k: _differential(sys, t, k) for k in range(-n, n - 1)}
    for k in range(-n, n - 2):
        _assert_zero_composition(maps[k], maps[k + 1])
    ranks = {k: rank_over_fractions(maps[k]) for k in maps}
    exact_at = {}
    for k in range(-n, n):
        rank_in = ranks.get(k - 1, 0)
        rank_out = ranks.get(k, 0)
        exact_at[k] = rank_in + rank_out == term_ranks[k]
    return ExactnessReport(t, term_ranks, ranks, exact_at)


def _assert_zero_composition(first, second):
    """second o first must vanish; anything else is a construction bug."""
    if first.nrows != second.ncols:
        raise AssertionError("differential shapes do not chain")
    for i in range(second.nrows):
        for j in range(first.ncols):
            acc = None
            for k in range(first.nrows):
                term = second.entry(i, k) * first.entry(k, j)
                acc = term if acc is None else acc + term
            if acc is not None and acc != 0:
                raise AssertionError("consecutive differentials do not "
                                     "compose to zero")
