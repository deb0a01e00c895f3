import pytest
from hypothesis import given, strategies as st

from chaincat.chain import (
    BlockMap,
    OPMap,
    OrderedPartition,
    SubMap,
    Subset,
    check_chain_size,
    compose,
    enumerate_oxn,
    extend_by_idempotent,
    factorize_block_map,
    factorize_submap,
    green,
    idempotent_for_image,
    idempotent_for_kernel,
    image,
    kernel,
    ordered_partitions,
    oxn_order,
    proper_subsets,
    restrict,
    retraction_for_inclusion,
    separator_idempotent,
    submaps_between,
)


@st.composite
def monotone_maps(draw, min_n=3, max_n=7):
    n = draw(st.integers(min_n, max_n))
    values = sorted(draw(st.lists(st.integers(1, n), min_size=n, max_size=n)))
    return OPMap(tuple(values))


@st.composite
def monotone_submaps(draw, min_n=3, max_n=7):
    n = draw(st.integers(min_n, max_n))
    dom = Subset.of(n, draw(st.sets(st.integers(1, n), min_size=1)))
    cod = Subset.of(n, draw(st.sets(st.integers(1, n), min_size=1)))
    values = sorted(
        draw(st.lists(st.sampled_from(cod.elements), min_size=len(dom), max_size=len(dom)))
    )
    return SubMap(dom, cod, tuple(values))


def subset(n, *elems):
    return Subset.of(n, elems)


class TestOPMap:
    def test_compose_examples(self):
        assert (OPMap((1, 1, 2)) * OPMap((2, 2, 3))).images == (2, 2, 2)
        assert (OPMap((1, 2, 2)) * OPMap((1, 2, 2))).images == (1, 2, 2)

    def test_constant_absorbs(self):
        c = OPMap.constant(4, 3)
        for f in enumerate_oxn(4):
            assert f * c == c

    def test_compose_dimension_mismatch(self):
        with pytest.raises(ValueError):
            compose(OPMap((1, 1, 2)), OPMap((1, 1, 2, 2)))

    def test_rejects_non_monotone(self):
        with pytest.raises(ValueError):
            OPMap((2, 1, 3))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            OPMap((1, 2, 4))

    def test_identity_and_singular(self):
        assert OPMap.identity(4).images == (1, 2, 3, 4)
        assert not OPMap.identity(4).is_singular()
        assert OPMap((1, 1, 3)).is_singular()

    @given(monotone_maps(), monotone_maps())
    def test_composition_closed_and_singular(self, f, g):
        if f.n != g.n:
            return
        h = f * g
        assert h.n == f.n
        if f.is_singular() and g.is_singular():
            assert h.is_singular()

    @pytest.mark.parametrize("n", [3, 4])
    def test_closure_exhaustive(self, n):
        maps = set(enumerate_oxn(n))
        for f in maps:
            for g in maps:
                assert f * g in maps

    def test_str_literal(self):
        assert str(OPMap((1, 1, 2))) == "[1,1,2]"


class TestImageKernel:
    @pytest.mark.parametrize(
        "images,expected",
        [((1, 1, 2), (1, 2)), ((2, 2, 2), (2,)), ((1, 3, 3), (1, 3))],
    )
    def test_image_examples(self, images, expected):
        assert image(OPMap(images)).elements == expected

    @pytest.mark.parametrize(
        "images,expected",
        [((1, 1, 3), (2, 1)), ((2, 2, 2), (3,)), ((1, 2, 2, 4), (1, 2, 1))],
    )
    def test_kernel_examples(self, images, expected):
        assert kernel(OPMap(images)).block_sizes == expected

    @given(monotone_maps())
    def test_kernel_blocks_are_fibers(self, f):
        p = kernel(f)
        assert sum(p.block_sizes) == f.n
        for block in p.blocks:
            values = {f(x) for x in block}
            assert len(values) == 1

    @given(monotone_maps())
    def test_rank_is_image_size(self, f):
        assert f.rank() == len(image(f)) == kernel(f).num_blocks


class TestGreen:
    def test_examples(self):
        assert green(OPMap((1, 1, 2)), OPMap((2, 2, 3)), "R")
        assert green(OPMap((1, 1, 2)), OPMap((2, 3, 3)), "J")
        assert green(OPMap((1, 1, 2)), OPMap((1, 2, 2)), "L")
        assert not green(OPMap((1, 1, 2)), OPMap((1, 1, 3)), "L")

    @given(monotone_maps())
    def test_h_is_equality(self, f):
        assert green(f, f, "H")

    def test_h_differs(self):
        assert not green(OPMap((1, 1, 2)), OPMap((1, 2, 2)), "H")

    def test_unknown_relation(self):
        with pytest.raises(ValueError):
            green(OPMap((1, 1, 2)), OPMap((1, 1, 2)), "D")

    def test_mismatched_sizes(self):
        with pytest.raises(ValueError):
            green(OPMap((1, 1, 2)), OPMap((1, 1, 2, 2)), "R")


class TestEnumeration:
    def test_n3_frozen(self):
        assert [m.images for m in enumerate_oxn(3)] == [
            (1, 1, 1), (1, 1, 2), (1, 1, 3), (1, 2, 2), (1, 3, 3),
            (2, 2, 2), (2, 2, 3), (2, 3, 3), (3, 3, 3),
        ]

    @pytest.mark.parametrize("n,count", [(3, 9), (4, 34), (5, 125), (6, 461), (7, 1715)])
    def test_counts(self, n, count):
        maps = enumerate_oxn(n)
        assert len(maps) == count == oxn_order(n)
        assert len(set(maps)) == len(maps)
        assert all(f.is_singular() for f in maps)
        assert sorted(f.images for f in maps) == [f.images for f in maps]

    def test_idempotent_count_n3(self):
        idem = [f for f in enumerate_oxn(3) if f.is_idempotent()]
        assert len(idem) == 7
        assert {f.images for f in idem} == {
            (1, 1, 1), (2, 2, 2), (3, 3, 3), (1, 1, 3), (1, 2, 2), (1, 3, 3), (2, 2, 3),
        }

    def test_chain_size_bounds(self):
        for bad in (2, 13, 0, -1):
            with pytest.raises(ValueError):
                check_chain_size(bad)
        with pytest.raises(ValueError):
            enumerate_oxn(2)

    def test_proper_subsets_count(self):
        assert len(proper_subsets(3)) == 6
        assert len(proper_subsets(4)) == 14

    def test_ordered_partitions_count(self):
        assert len(ordered_partitions(3)) == 3
        assert len(ordered_partitions(4)) == 7
        assert len(ordered_partitions(4, include_identity=True)) == 8


class TestIdempotentForImage:
    @pytest.mark.parametrize(
        "n,elems,expected",
        [
            (3, (1, 3), (1, 3, 3)),
            (3, (2,), (2, 2, 2)),
            (5, (2, 4), (2, 2, 4, 4, 4)),
        ],
    )
    def test_examples(self, n, elems, expected):
        assert idempotent_for_image(subset(n, *elems)).images == expected

    def test_full_chain_rejected(self):
        with pytest.raises(ValueError):
            idempotent_for_image(Subset.full(3))

    @pytest.mark.parametrize("n", range(3, 8))
    def test_idempotent_with_exact_image(self, n):
        for a in proper_subsets(n):
            e = idempotent_for_image(a)
            assert e.is_idempotent()
            assert image(e) == a


class TestIdempotentForKernel:
    @pytest.mark.parametrize("n", range(3, 7))
    def test_idempotent_with_exact_kernel(self, n):
        for p in ordered_partitions(n):
            e = idempotent_for_kernel(p)
            assert e.is_idempotent()
            assert kernel(e) == p

    def test_identity_partition_rejected(self):
        with pytest.raises(ValueError):
            idempotent_for_kernel(OrderedPartition.identity(3))


class TestRetraction:
    def test_example(self):
        r = retraction_for_inclusion(subset(4, 1, 4), subset(4, 1, 2, 4))
        assert r.values == (1, 1, 4)

    def test_identity_when_equal(self):
        a = subset(4, 1, 3)
        assert retraction_for_inclusion(a, a).is_identity()

    def test_singleton_target(self):
        r = retraction_for_inclusion(subset(4, 2), subset(4, 1, 2, 3))
        assert r.values == (2, 2, 2)

    def test_not_a_subset(self):
        with pytest.raises(ValueError):
            retraction_for_inclusion(subset(4, 1, 3), subset(4, 1, 2))

    @pytest.mark.parametrize("n", range(3, 7))
    def test_splits_every_inclusion(self, n):
        subs = proper_subsets(n)
        for a in subs:
            for b in subs:
                if a != b and a.issubset(b):
                    r = retraction_for_inclusion(a, b)
                    assert SubMap.inclusion(a, b).then(r) == SubMap.identity(a)


class TestSeparator:
    def test_examples(self):
        assert separator_idempotent(2, 3).images == (2, 2, 3)
        assert separator_idempotent(2, 4).images == (2, 2, 3, 3)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            separator_idempotent(3, 3)
        with pytest.raises(ValueError):
            separator_idempotent(0, 3)

    def test_separation_witness(self):
        a, b = OPMap((1, 1, 2)), OPMap((1, 1, 3))
        e = separator_idempotent(2, 3)
        assert a * e != b * e
        assert (a * e).images == (2, 2, 2)
        assert (b * e).images == (2, 2, 3)

    def test_literal_max_image_variant_fails_to_separate(self):
        # The step-to-max-image alternative collapses to a constant here and
        # cannot distinguish the pair; kept as a regression for why the
        # two-block step map is the one implemented.
        a, b = OPMap((1, 1, 2)), OPMap((1, 1, 3))
        x_i, x_k = 2, 2
        literal = OPMap(tuple(x_i if x <= x_i else x_k for x in range(1, 4)))
        assert literal.images == (2, 2, 2)
        assert a * literal == b * literal

    @pytest.mark.parametrize("n", range(3, 7))
    def test_separates_all_kernel_sharing_pairs(self, n):
        by_kernel = {}
        for f in enumerate_oxn(n):
            by_kernel.setdefault(kernel(f), []).append(f)
        for ker, cls in by_kernel.items():
            reps = [blk[0] for blk in ker.blocks]
            for i, a in enumerate(cls):
                for b in cls[i + 1:]:
                    pos = next(x for x in reps if a(x) != b(x))
                    e = separator_idempotent(min(a(pos), b(pos)), n)
                    assert a * e != b * e


class TestRestrict:
    def test_examples(self):
        assert restrict(OPMap((1, 3, 3)), subset(3, 1, 2)).values == (1, 3)
        assert restrict(OPMap((1, 2, 2)), subset(3, 1, 2)).is_identity()
        assert restrict(OPMap((2, 2, 2)), subset(3, 1, 3)).values == (2, 2)

    def test_declared_codomain(self):
        r = restrict(OPMap((1, 3, 3)), subset(3, 1, 2), codomain=subset(3, 1, 2, 3))
        assert r.codomain.elements == (1, 2, 3)

    def test_extension_restricts_back(self):
        f = SubMap(subset(4, 1, 3), subset(4, 2, 4), (2, 4))
        ext = extend_by_idempotent(f)
        assert restrict(ext, f.domain, codomain=f.codomain) == f


class TestSubsetPartition:
    def test_subset_validation(self):
        with pytest.raises(ValueError):
            Subset(3, ())
        with pytest.raises(ValueError):
            Subset(3, (2, 2))
        with pytest.raises(ValueError):
            Subset(3, (0, 1))
        assert not Subset.full(3).is_proper()
        assert subset(3, 1, 2).is_proper()

    def test_partition_validation(self):
        with pytest.raises(ValueError):
            OrderedPartition(4, (2, 1))
        with pytest.raises(ValueError):
            OrderedPartition(4, (0, 4))
        assert OrderedPartition(4, (1, 1, 1, 1)).is_non_identity() is False
        assert OrderedPartition(4, (2, 2)).is_non_identity()

    def test_blocks_and_lookup(self):
        p = OrderedPartition(4, (1, 2, 1))
        assert p.blocks == ((1,), (2, 3), (4,))
        assert [p.block_of(x) for x in (1, 2, 3, 4)] == [0, 1, 1, 2]
        assert str(p) == "(1,2,1)"

    def test_refinement(self):
        assert OrderedPartition(4, (1, 1, 2)).refines(OrderedPartition(4, (2, 2)))
        assert not OrderedPartition(4, (2, 2)).refines(OrderedPartition(4, (1, 1, 2)))
        assert OrderedPartition(4, (2, 2)).refines(OrderedPartition(4, (2, 2)))


class TestSubMap:
    def test_validation(self):
        with pytest.raises(ValueError):
            SubMap(subset(3, 1, 2), subset(3, 1, 3), (1, 2))
        with pytest.raises(ValueError):
            SubMap(subset(3, 1, 2), subset(3, 1, 3), (3, 1))

    def test_compose_and_identity(self):
        f = SubMap(subset(3, 1, 2), subset(3, 1, 3), (1, 3))
        g = SubMap(subset(3, 1, 3), subset(3, 2, 3), (2, 3))
        assert f.then(g).values == (2, 3)
        assert f.then(SubMap.identity(subset(3, 1, 3))) == f
        with pytest.raises(ValueError):
            g.then(f)

    def test_bijective(self):
        assert SubMap(subset(3, 1, 2), subset(3, 1, 3), (1, 3)).is_bijective()
        assert not SubMap(subset(3, 1, 2), subset(3, 1, 3), (1, 1)).is_bijective()

    def test_enumeration_count(self):
        assert len(submaps_between(subset(3, 1, 2), subset(3, 1, 3))) == 3


class TestFactorizations:
    def test_submap_example(self):
        f = SubMap(subset(4, 1, 2, 4), subset(4, 1, 3, 4), (3, 3, 4))
        q, u, j = factorize_submap(f)
        assert q.codomain.elements == (1, 4) and q.values == (1, 1, 4)
        assert u.values == (3, 4)
        assert j == SubMap.inclusion(subset(4, 3, 4), subset(4, 1, 3, 4))
        assert q.then(u).then(j) == f

    def test_submap_iso_case(self):
        f = SubMap(subset(3, 1, 2), subset(3, 1, 3), (1, 3))
        q, u, j = factorize_submap(f)
        assert q.is_identity() and j.is_identity() and u == f

    def test_retraction_agrees_with_left_endpoint_rule(self):
        for n in (3, 4):
            for a in proper_subsets(n):
                for b in proper_subsets(n):
                    for f in submaps_between(a, b):
                        q, _, _ = factorize_submap(f)
                        assert q == retraction_for_inclusion(q.codomain, a)

    def test_block_map_example(self):
        p1, p2 = OrderedPartition(4, (1, 1, 2)), OrderedPartition(4, (2, 2))
        eta = BlockMap(p2, p1, (0, 2))
        zeta, u, v = factorize_block_map(eta)
        assert zeta.source.block_sizes == (1, 3)
        assert v.target.block_sizes == (2, 2)
        assert zeta.images == (0, 2) and u.images == (0, 1)
        assert v.then(u).then(zeta) == eta

    def test_block_map_constant(self):
        p1, p2 = OrderedPartition(4, (1, 1, 2)), OrderedPartition(4, (2, 2))
        eta = BlockMap(p2, p1, (0, 0))
        zeta, u, v = factorize_block_map(eta)
        assert zeta.source.block_sizes == (4,)
        assert v.target.block_sizes == (4,)

    def test_block_map_identity(self):
        p = OrderedPartition(4, (2, 2))
        eta = BlockMap.identity(p)
        zeta, u, v = factorize_block_map(eta)
        assert zeta.is_identity() and v.is_identity() and u.is_identity()

    @given(monotone_submaps())
    def test_submap_factorization_properties(self, f):
        q, u, j = factorize_submap(f)
        assert q.then(u).then(j) == f
        assert u.is_bijective()
        assert j == SubMap.inclusion(j.domain, j.codomain)
        assert SubMap.inclusion(q.codomain, q.domain).then(q) == SubMap.identity(q.codomain)
