"""Order polytopes of all small posets: NG is decided by the factors."""
from corpus import order_corpus, order_polytope, polytope_instance
from ngtrace.ehrhart import canonical_module
from ngtrace.polytope import codegree, is_01, is_idp, product_factorization
from ngtrace.trace import is_gorenstein


def _factor_condition(P):
    facs = product_factorization(P)
    degs = [codegree(f) for f in facs]
    return all(is_gorenstein(canonical_module(f)) for f in facs) and max(degs) - min(degs) <= 1


def test_order_corpus_is_idp_01():
    insts = order_corpus()
    assert len(insts) == 1 + 2 + 5 + 16
    assert all(is_01(i.polytope) and i.idp for i in insts)


def test_ng_iff_natural_on_posets():
    assert [i.name for i in order_corpus() if i.ng != i.natural] == []


def test_ng_iff_gorenstein_factors_close_codegrees():
    assert [i.name for i in order_corpus() if i.ng != _factor_condition(i.polytope)] == []


def test_gorenstein_factors_alone_do_not_suffice():
    # a 3-chain next to an isolated point: both factors are Gorenstein, codegrees 4 and 2
    inst = polytope_instance("chain3+pt", order_polytope(4, {(0, 1), (1, 2), (0, 2)}))
    facs = product_factorization(inst.polytope)
    assert all(is_gorenstein(canonical_module(f)) for f in facs)
    assert sorted(codegree(f) for f in facs) == [2, 4]
    assert not inst.ng and not inst.natural
    assert is_idp(inst.polytope)
