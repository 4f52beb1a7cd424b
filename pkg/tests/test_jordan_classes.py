import random

import pytest

from nilcones.errors import NonSplitSpectrum, RepeatedEigenvalue, SizeMismatch
from nilcones.fields import GF, QQ
from nilcones.linalg import Mat, Vec, random_gl
from nilcones.partitions import Bipartition, double, enumerate_bipartitions
from nilcones.enhanced import EnhancedElement, act, build_representative, orbit_dim
from nilcones.exotic import embed_phi
from nilcones.jordan_classes import (
    ClassLabel,
    build_class_representative,
    class_closure_leq,
    class_count_formula,
    class_dim_enhanced,
    class_dim_exotic,
    class_nilcone_orbit,
    class_orbit_dim,
    enumerate_classes,
    format_class_label,
    identify_class,
    identify_exotic_class,
)

B = Bipartition


def test_class_label_canonical_form():
    c1 = ClassLabel((1, 2, 1), (B((1,), ()), B((2,), ()), B((), (1,))))
    c2 = ClassLabel((2, 1, 1), (B((2,), ()), B((), (1,)), B((1,), ())))
    assert c1 == c2
    assert c1.lam == (2, 1, 1)
    with pytest.raises(SizeMismatch):
        ClassLabel((2,), (B((1,), ()),))
    with pytest.raises(SizeMismatch):
        ClassLabel((2, 1), (B((2,), ()),))


def test_enumeration_counts():
    assert len(enumerate_classes(1)) == 2
    assert len(enumerate_classes(2)) == 8
    assert len(enumerate_classes(3)) == 24
    for n in range(7):
        classes = enumerate_classes(n)
        assert len(classes) == class_count_formula(n)
        assert len(set(classes)) == len(classes)


def test_class_dims():
    dense = ClassLabel((1, 1), (B((1,), ()), B((1,), ())))
    assert class_dim_enhanced(dense) == 6
    assert class_dim_exotic(dense) == 10
    center = ClassLabel((4,), (B((), (1, 1, 1, 1)),))
    assert class_dim_enhanced(center) == 1
    assert class_dim_exotic(center) == 1
    for n in range(1, 5):
        for b in enumerate_bipartitions(n):
            c = ClassLabel((n,), (b,))
            assert class_dim_enhanced(c) == orbit_dim(b) + 1
            assert class_dim_exotic(c) == 2 * orbit_dim(b) + 1


def test_identify_class_examples():
    nil = build_representative(B((2,), (1,)))
    assert identify_class(nil) == ClassLabel((3,), (B((2,), (1,)),))
    semi = EnhancedElement(2, Vec.zero(QQ, 2), Mat(QQ, ((1, 0), (0, 2))))
    assert identify_class(semi) == ClassLabel((1, 1), (B((), (1,)), B((), (1,))))
    mixed = EnhancedElement(2, Vec(QQ, (1, 1)), Mat(QQ, ((1, 0), (0, 2))))
    assert identify_class(mixed) == ClassLabel((1, 1), (B((1,), ()), B((1,), ())))
    with pytest.raises(NonSplitSpectrum):
        identify_class(EnhancedElement(2, Vec.zero(QQ, 2), Mat(QQ, ((0, -1), (1, 0)))))


def test_identify_class_round_trip():
    for n in range(1, 5):
        for c in enumerate_classes(n):
            assert identify_class(build_class_representative(c)) == c


def test_identify_class_constant_on_classes():
    rng = random.Random(13)
    for n in (2, 3):
        for c in enumerate_classes(n):
            alt = build_class_representative(c, tuple(rng.sample(range(20, 80), len(c.lam))))
            assert identify_class(alt) == c
            g = random_gl(n, rng)
            assert identify_class(act(g, alt)) == c


def test_build_class_representative_validation():
    c = ClassLabel((1, 1), (B((1,), ()), B((1,), ())))
    with pytest.raises(RepeatedEigenvalue):
        build_class_representative(c, (1, 1))
    with pytest.raises(SizeMismatch):
        build_class_representative(c, (1, 2, 3))


def test_identify_class_over_prime_field():
    f = GF(5)
    e = EnhancedElement(2, Vec(f, (1, 1)), Mat(f, ((1, 0), (0, 2))))
    assert identify_class(e) == ClassLabel((1, 1), (B((1,), ()), B((1,), ())))


def test_identify_exotic_class():
    for n in (1, 2, 3):
        for c in enumerate_classes(n):
            exo = embed_phi(build_class_representative(c))
            assert identify_exotic_class(exo) == c


def test_class_nilcone_orbit():
    for n in range(1, 5):
        for b in enumerate_bipartitions(n):
            assert class_nilcone_orbit(ClassLabel((n,), (b,))) == b
    regular = ClassLabel((1, 1), (B((1,), ()), B((1,), ())))
    assert class_nilcone_orbit(regular) == B((2,), ())
    c13 = ClassLabel((3, 4, 4, 2),
                     (B((1, 1, 1), ()), B((1, 1, 1, 1), ()),
                      B((), (1, 1, 1, 1)), B((), (1, 1))))
    assert class_nilcone_orbit(c13) == B((2, 2, 2, 1), (2, 2, 1, 1))


def test_class_nilcone_orbit_intertwines_doubling():
    for n in range(1, 6):
        for c in enumerate_classes(n):
            doubled = ClassLabel(tuple(2 * p for p in c.lam),
                                 tuple(double(b) for b in c.blocks))
            assert double(class_nilcone_orbit(c)) == class_nilcone_orbit(doubled)


def test_class_closure_examples():
    for c in enumerate_classes(3):
        assert class_closure_leq(c, c)
    # nilpotent classes compare exactly like their orbits
    from nilcones.partitions import ah_closure_leq

    for b1 in enumerate_bipartitions(3):
        for b2 in enumerate_bipartitions(3):
            assert class_closure_leq(ClassLabel((3,), (b1,)),
                                     ClassLabel((3,), (b2,))) == ah_closure_leq(b1, b2)
    dense = ClassLabel((1, 1), (B((1,), ()), B((1,), ())))
    merged = ClassLabel((2,), (B((2,), ()),))
    assert class_closure_leq(merged, dense)
    below = ClassLabel((2,), (B((1, 1), ()),))
    assert class_closure_leq(below, dense)
    assert not class_closure_leq(dense, merged)
    with pytest.raises(SizeMismatch):
        class_closure_leq(merged, ClassLabel((1,), (B((1,), ()),)))


def test_nilpotent_class_below_iff_orbit_below_nilcone_orbit():
    # the class closure meets the nilpotent cone in the closure of one
    # orbit, so a nilpotent class lies below exactly when its orbit does
    from nilcones.partitions import ah_closure_leq

    for n in (2, 3, 4):
        for c in enumerate_classes(n):
            target = class_nilcone_orbit(c)
            for b in enumerate_bipartitions(n):
                nil = ClassLabel((n,), (b,))
                assert class_closure_leq(nil, c) == ah_closure_leq(b, target)


def test_class_closure_is_partial_order_small():
    for n in (2, 3):
        classes = enumerate_classes(n)
        leq = {(i, j): class_closure_leq(a, b)
               for i, a in enumerate(classes) for j, b in enumerate(classes)}
        m = len(classes)
        for i in range(m):
            assert leq[(i, i)]
            for j in range(m):
                if i != j and leq[(i, j)]:
                    assert not leq[(j, i)]
                if leq[(i, j)]:
                    for k in range(m):
                        if leq[(j, k)]:
                            assert leq[(i, k)]


def test_class_closure_dimension_monotone():
    for n in (2, 3, 4):
        classes = enumerate_classes(n)
        for c1 in classes:
            for c2 in classes:
                if class_closure_leq(c1, c2):
                    assert class_dim_enhanced(c1) <= class_dim_enhanced(c2)


def test_orbit_dim_of_class():
    for n in (2, 3):
        for c in enumerate_classes(n):
            assert class_orbit_dim(c) == class_dim_enhanced(c) - len(c.lam)


def test_format():
    c = ClassLabel((3, 2, 2), (B((1, 1, 1), ()), B((2,), ()), B((1,), (1,))))
    assert format_class_label(c) == "λ=[3,2,2]; blocks=[(1^3;),(2;),(1;1)]"
