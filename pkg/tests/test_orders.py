import itertools
import math

import pytest
from hypothesis import given, strategies as st

from ordersheaf import CapacityError, DomainError, TotalOrder, all_total_orders, kendall_tau, restrict_order

from conftest import brute_force_inversions, orders

A, B, C, D = range(4)


def test_restrict_examples():
    assert restrict_order(TotalOrder.of(A, B, C), {A, C}) == TotalOrder.of(A, C)
    assert restrict_order(TotalOrder.of(A, B, C), {A, B, C}) == TotalOrder.of(A, B, C)
    assert restrict_order(TotalOrder.of(B, C, D), {B, C}) == TotalOrder.of(B, C)


def test_restrict_outside_domain():
    with pytest.raises(DomainError):
        restrict_order(TotalOrder.of(A, B), {A, C})
    with pytest.raises(DomainError):
        restrict_order(TotalOrder.of(A, B), set())


@pytest.mark.parametrize("bad", [(), (A, A), (A, B, A)])
def test_order_invariants(bad):
    with pytest.raises(DomainError):
        TotalOrder(bad)


def test_kendall_tau_examples():
    abc = TotalOrder.of(A, B, C)
    assert kendall_tau(abc, abc) == 0
    assert kendall_tau(abc, TotalOrder.of(C, B, A)) == 3
    bca = TotalOrder.of(B, C, A)
    assert brute_force_inversions(abc.ranking, bca.ranking) == 2
    assert kendall_tau(abc, bca) == 2


def test_kendall_tau_domain_mismatch():
    with pytest.raises(DomainError):
        kendall_tau(TotalOrder.of(A, B), TotalOrder.of(A, C))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_kendall_tau_is_a_metric(n):
    perms = all_total_orders(range(n))
    for p, q in itertools.product(perms, repeat=2):
        d = kendall_tau(p, q)
        assert d == brute_force_inversions(p.ranking, q.ranking)
        assert (d == 0) == (p == q)
        assert d == kendall_tau(q, p)
        assert 0 <= d <= n * (n - 1) // 2
    for p, q, r in itertools.product(perms, repeat=3):
        assert kendall_tau(p, r) <= kendall_tau(p, q) + kendall_tau(q, r)


@pytest.mark.parametrize("n", [1, 3, 4])
def test_all_total_orders(n):
    out = all_total_orders(range(n))
    assert len(out) == math.factorial(n) == len(set(out))
    assert [o.ranking for o in out] == sorted(o.ranking for o in out)
    assert all(o.domain == frozenset(range(n)) for o in out)


def test_enumeration_cap():
    with pytest.raises(CapacityError):
        all_total_orders(range(11))


@given(orders(min_size=1, max_size=7), st.data())
def test_restriction_is_functorial(order, data):
    s1 = data.draw(st.sets(st.sampled_from(order.ranking), min_size=1))
    s2 = data.draw(st.sets(st.sampled_from(sorted(s1)), min_size=1))
    assert restrict_order(restrict_order(order, s1), s2) == restrict_order(order, s2)
    kept = restrict_order(order, s1).ranking
    assert [a for a in order.ranking if a in s1] == list(kept)
