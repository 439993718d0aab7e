import pytest
from hypothesis import given

from signdeloop.errors import (
    ContractError,
    DomainMismatch,
    NotMember,
    NotSubset,
    SizeGuard,
    WrongCardinality,
)
from signdeloop.finite import (
    Bijection,
    LabeledSet,
    Subset,
    compose_bijection,
    disjoint_union,
    enumerate_bijections,
    extend,
    fin,
    identity,
    invert_bijection,
    k_subsets,
    order_bijection,
    puncture,
    support,
    swap_two,
    transposition_of_pair,
)

from strategies import bijection_chains, endo_bijections, labeled_sets


def tr(n, i, j):
    return transposition_of_pair(fin(n), (i, j))


class TestLabeledSet:
    def test_fin(self):
        assert fin(3).elements == (0, 1, 2)
        assert fin(0).elements == ()
        assert len(fin(5)) == 5

    def test_of_sorts(self):
        assert LabeledSet.of([9, 2, 5]).elements == (2, 5, 9)

    def test_rejects_duplicates(self):
        with pytest.raises(ContractError):
            LabeledSet.of([1, 1, 2])

    def test_rejects_unsorted_direct(self):
        with pytest.raises(ContractError):
            LabeledSet((3, 1))

    def test_rejects_negative(self):
        with pytest.raises(ContractError):
            LabeledSet((-1,))

    def test_membership(self):
        X = LabeledSet.of([4, 7])
        assert 4 in X and 5 not in X
        with pytest.raises(NotMember):
            X.position(5)


class TestBijection:
    def test_identity(self):
        e = identity(fin(3))
        assert e.images == (0, 1, 2)
        assert e.is_identity
        assert e(2) == 2

    def test_compose_applies_left_first(self):
        # apply <0 1>, then <1 2>: 0->1->2, 1->0->0, 2->2->1
        assert compose_bijection(tr(3, 0, 1), tr(3, 1, 2)).images == (2, 0, 1)

    def test_transposition_squares_to_identity(self):
        assert compose_bijection(tr(2, 0, 1), tr(2, 0, 1)) == identity(fin(2))

    def test_invert(self):
        e = Bijection(fin(3), fin(3), (2, 0, 1))
        assert invert_bijection(e).images == (1, 2, 0)

    def test_invalid_images(self):
        with pytest.raises(ContractError):
            Bijection(fin(2), fin(2), (0, 0))
        with pytest.raises(ContractError):
            Bijection(fin(2), fin(3), (0, 1))

    def test_domain_mismatch(self):
        with pytest.raises(DomainMismatch):
            identity(fin(2)).then(identity(fin(3)))

    def test_preimage(self):
        e = Bijection(fin(3), fin(3), (2, 0, 1))
        assert e.preimage(2) == 0
        with pytest.raises(NotMember):
            e.preimage(7)

    @given(bijection_chains(length=3))
    def test_associativity(self, chain):
        e, f, g = chain
        assert e.then(f).then(g) == e.then(f.then(g))

    @given(endo_bijections())
    def test_inverse_roundtrip(self, e):
        assert e.then(e.inverse()) == identity(e.domain)
        assert e.inverse().inverse() == e

    @given(endo_bijections())
    def test_identity_laws(self, e):
        assert identity(e.domain).then(e) == e
        assert e.then(identity(e.codomain)) == e


class TestEnumerateBijections:
    def test_count_and_distinct(self):
        out = enumerate_bijections(fin(3), fin(3))
        assert len(out) == 6
        assert len(set(out)) == 6

    def test_lexicographic_order(self):
        out = enumerate_bijections(fin(3), fin(3))
        assert [e.images for e in out] == sorted(e.images for e in out)
        assert out[0] == identity(fin(3))

    def test_first_is_order_preserving(self):
        A, B = LabeledSet.of([1, 5]), LabeledSet.of([3, 9])
        out = enumerate_bijections(A, B)
        assert out[0].images == (3, 9)
        assert out[0] == order_bijection(A).inverse().then(order_bijection(B))
        assert len(out) == 2

    def test_mismatched_sizes_empty(self):
        assert enumerate_bijections(fin(2), fin(3)) == ()

    def test_size_guard(self):
        with pytest.raises(SizeGuard):
            enumerate_bijections(fin(9), fin(9))
        # custom bound
        assert len(enumerate_bijections(fin(3), fin(3), bound=3)) == 6
        with pytest.raises(SizeGuard):
            enumerate_bijections(fin(4), fin(4), bound=3)


class TestSubsets:
    def test_k_subsets_counts(self):
        assert len(k_subsets(fin(4), 2)) == 6
        assert len(k_subsets(fin(3), 0)) == 1
        assert k_subsets(fin(2), 5) == ()

    def test_k_subsets_order(self):
        out = k_subsets(fin(5), 2)
        assert out[0].members == (0, 1)
        assert out[-1].members == (3, 4)
        assert len(out) == 10

    def test_subset_validation(self):
        with pytest.raises(NotSubset):
            Subset(fin(3), (0, 5))
        with pytest.raises(ContractError):
            Subset(fin(3), (1, 0))

    def test_disjoint_union(self):
        u = disjoint_union([LabeledSet.of([0, 2]), LabeledSet.of([1])])
        assert u.elements == (0, 1, 2)
        with pytest.raises(ContractError):
            disjoint_union([fin(2), fin(1)])


class TestSwapAndSupport:
    def test_swap_two(self):
        T = LabeledSet.of([4, 9])
        s = swap_two(T)
        assert s(4) == 9 and s(9) == 4
        assert s.then(s) == identity(T)

    def test_swap_is_unique_nonidentity(self):
        T = LabeledSet.of([3, 8])
        assert set(enumerate_bijections(T, T)) == {identity(T), swap_two(T)}

    def test_swap_wrong_cardinality(self):
        with pytest.raises(WrongCardinality):
            swap_two(fin(3))

    def test_support(self):
        assert support(identity(fin(4))).members == ()
        assert support(tr(4, 1, 3)).members == (1, 3)
        assert support(Bijection(fin(3), fin(3), (1, 2, 0))).members == (0, 1, 2)

    def test_support_needs_endo(self):
        e = Bijection(fin(2), LabeledSet.of([5, 6]), (5, 6))
        with pytest.raises(DomainMismatch):
            support(e)


class TestTransposition:
    def test_images(self):
        assert tr(4, 1, 2).images == (0, 2, 1, 3)

    def test_arbitrary_labels(self):
        X = LabeledSet.of([2, 5, 8])
        t = transposition_of_pair(X, (2, 8))
        assert t.images == (8, 5, 2)

    def test_accepts_subset(self):
        X = fin(4)
        t = transposition_of_pair(X, Subset(X, (0, 3)))
        assert t.images == (3, 1, 2, 0)

    def test_errors(self):
        with pytest.raises(WrongCardinality):
            transposition_of_pair(fin(3), (0, 1, 2))
        with pytest.raises(NotSubset):
            transposition_of_pair(fin(3), (0, 7))

    def test_unique_with_pair_support(self):
        # exhaustion: the transposition is the only endo-bijection moving
        # exactly the pair
        for n in range(2, 6):
            X = fin(n)
            for P in k_subsets(X, 2):
                matching = [
                    e
                    for e in enumerate_bijections(X, X)
                    if support(e).members == P.members
                ]
                assert matching == [transposition_of_pair(X, P)]


class TestPunctureExtend:
    def test_puncture(self):
        assert puncture(fin(3), 1).elements == (0, 2)
        with pytest.raises(NotMember):
            puncture(fin(3), 5)

    def test_extend(self):
        Y, fresh = extend(LabeledSet.of([0, 2]))
        assert (Y.elements, fresh) == ((0, 2, 3), 3)
        Y, fresh = extend(LabeledSet.of([]))
        assert (Y.elements, fresh) == ((0,), 0)

    def test_puncture_then_extend_matches(self):
        # relabeling the fresh point back to the removed one recovers X
        X = LabeledSet.of([1, 4, 6])
        for x in X:
            Z, fresh = extend(puncture(X, x))
            images = tuple(x if z == fresh else z for z in Z.elements)
            relabel = Bijection(Z, X, images)
            assert set(relabel.images) == set(X.elements)
            assert relabel(fresh) == x

    @given(labeled_sets(min_size=1))
    def test_extend_puncture_roundtrip(self, X):
        Z, fresh = extend(X)
        assert puncture(Z, fresh) == X
