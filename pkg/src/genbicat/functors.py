"""Stock oplax functors used as positive instances.

Each builder returns oplax data; several also have a directly written
comonadic presentation so that the two conversions can be compared against
something they did not produce themselves.
"""

from __future__ import annotations

from . import finset as fs
from . import span as sp
from .bicategory import Bicategory
from .finset import FinFunction
from .monoidal import STAR, CartesianBicat, diagonal
from .oplax import ComonadicData, LocalFunctor, OplaxData, OplaxTransformationData, Table
from .span import Span, SpanBicat, SpanMor


def identity_functor(A: Bicategory) -> LocalFunctor:
    return LocalFunctor("identity", lambda X: X, lambda a: a, lambda al: al)


def identity_oplax(A: Bicategory) -> OplaxData:
    L = identity_functor(A)
    phi = Table(lambda k: A.id2(A.compose(k[0], k[1])), name="phi")
    lam = Table(lambda X: A.id2(A.unit(X)), name="lambda")
    return OplaxData(A, A, L, phi, lam, f"identity on {A.name}")


def identity_comonadic(A: Bicategory, cls) -> ComonadicData:
    """``Phi[delta] = delta`` and ``Lam[eps] = eps``, written down directly."""
    L = identity_functor(A)
    return ComonadicData(
        A, A, L, cls, Table(lambda g: g.cell, name="Phi"), Table(lambda e: e.cell, name="Lambda"), f"identity on {A.name}"
    )


# ---------------------------------------------------------------------------
# X |-> X x K on spans


def _times(f: FinFunction, k: int) -> FinFunction:
    return FinFunction.unchecked(f.dom * k, f.cod * k, tuple(f.table[i] * k + j for i in range(f.dom) for j in range(k)))


def product_functor(k: int) -> LocalFunctor:
    def one(a: Span) -> Span:
        return Span(_times(a.left, k), _times(a.right, k))

    def two(al: SpanMor) -> SpanMor:
        return SpanMor(one(al.src), one(al.dst), _times(al.map, k))

    return LocalFunctor(f"x{k}", lambda X: X * k, one, two)


def product_oplax(A: SpanBicat, k: int, C: SpanBicat | None = None) -> OplaxData:
    C = C or SpanBicat(A.max_obj * k, A.max_apex * k)
    L = product_functor(k)

    def phi(key):
        a, b = key
        ab = sp.compose_spans(a, b)
        src = L.one(ab)
        dst = sp.compose_spans(L.one(a), L.one(b))
        idx = dst.pb.pair_index
        table = tuple(idx[(i * k + j, i2 * k + j)] for i, i2 in ab.pb.pairs for j in range(k))
        return SpanMor(src, dst, FinFunction.unchecked(src.apex, dst.apex, table))

    lam = Table(lambda X: C.id2(C.unit(X * k)), name="lambda")
    return OplaxData(A, C, L, Table(phi, name="phi"), lam, f"x{k} on spans")


def product_comonadic(A: SpanBicat, cls, k: int, C: SpanBicat | None = None) -> ComonadicData:
    """Comultiplication ``(t, j) |-> ((t, j), (t, j))`` into ``L(l);L(r)``."""
    C = C or SpanBicat(A.max_obj * k, A.max_apex * k)
    L = product_functor(k)

    def Phi(g):
        src = L.one(g.c)
        dst = sp.compose_spans(L.one(g.l), L.one(g.r))
        idx = dst.pb.pair_index
        return SpanMor(src, dst, FinFunction.unchecked(src.apex, dst.apex, tuple(idx[(x, x)] for x in range(src.apex))))

    def Lam(e):
        n = L.one(e.n)
        return SpanMor(n, C.unit(e.obj * k), n.left)

    return ComonadicData(A, C, L, cls, Table(Phi, name="Phi"), Table(Lam, name="Lambda"), f"x{k} on spans")


# ---------------------------------------------------------------------------
# X |-> X + K on spans


def _plus(f: FinFunction, k: int) -> FinFunction:
    return FinFunction.unchecked(f.dom + k, f.cod + k, f.table + tuple(f.cod + j for j in range(k)))


def sum_functor(k: int) -> LocalFunctor:
    def one(a: Span) -> Span:
        return Span(_plus(a.left, k), _plus(a.right, k))

    def two(al: SpanMor) -> SpanMor:
        return SpanMor(one(al.src), one(al.dst), _plus(al.map, k))

    return LocalFunctor(f"+{k}", lambda X: X + k, one, two)


def sum_oplax(A: SpanBicat, k: int, C: SpanBicat | None = None) -> OplaxData:
    C = C or SpanBicat(A.max_obj + k, A.max_apex + k)
    L = sum_functor(k)

    def phi(key):
        a, b = key
        ab = sp.compose_spans(a, b)
        src = L.one(ab)
        dst = sp.compose_spans(L.one(a), L.one(b))
        idx = dst.pb.pair_index
        table = tuple(idx[p] for p in ab.pb.pairs) + tuple(idx[(a.apex + j, b.apex + j)] for j in range(k))
        return SpanMor(src, dst, FinFunction.unchecked(src.apex, dst.apex, table))

    lam = Table(lambda X: C.id2(C.unit(X + k)), name="lambda")
    return OplaxData(A, C, L, Table(phi, name="phi"), lam, f"+{k} on spans")


# ---------------------------------------------------------------------------
# apex: Span -> (FinSet, x, 1), genuinely oplax


def apex_functor() -> LocalFunctor:
    return LocalFunctor("apex", lambda X: STAR, lambda a: a.apex, lambda al: al.map)


def apex_oplax(A: SpanBicat, C: CartesianBicat | None = None) -> OplaxData:
    """``phi[a, b]`` includes the pullback into the product; ``lam[X]: X -> 1``."""
    C = C or CartesianBicat(A.max_apex)
    L = apex_functor()

    def phi(key):
        a, b = key
        ab = sp.compose_spans(a, b)
        nb = b.apex
        return FinFunction(ab.apex, a.apex * nb, tuple(i * nb + j for i, j in ab.pb.pairs))

    lam = Table(lambda X: fs.to_terminal(X), name="lambda")
    return OplaxData(A, C, L, Table(phi, name="phi"), lam, "apex")


def apex_comonadic(A: SpanBicat, cls, C: CartesianBicat | None = None) -> ComonadicData:
    """Comultiplication is the diagonal of the apex, counit the map to 1."""
    C = C or CartesianBicat(A.max_apex)
    L = apex_functor()
    Phi = Table(lambda g: diagonal(g.c.apex), name="Phi")
    Lam = Table(lambda e: fs.to_terminal(e.n.apex), name="Lambda")
    return ComonadicData(A, C, L, cls, Phi, Lam, "apex")


# ---------------------------------------------------------------------------
# a non-identity transformation: x K  =>  identity, by projecting away K


def projection_transformation(k: int) -> OplaxTransformationData:
    """``theta_X = (id, pi): X*K -> X`` with components read off the apexes."""

    def obj(X):
        n = X * k
        return Span(fs.identity(n), FinFunction(n, X, tuple(i // k for i in range(n))))

    L = product_functor(k)

    def theta(f: Span):
        X, Y = f.src, f.tgt
        src = sp.compose_spans(L.one(f), obj(Y))
        dst = sp.compose_spans(obj(X), f)
        idx = dst.pb.pair_index
        table = []
        for tk, _y in src.pb.pairs:
            t, j = divmod(tk, k)
            table.append(idx[(f.left.table[t] * k + j, t)])
        return SpanMor(src, dst, FinFunction.unchecked(src.apex, dst.apex, tuple(table)))

    return OplaxTransformationData(obj, Table(theta, name="theta"), f"project x{k}")
