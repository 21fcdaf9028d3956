from hypothesis import given, strategies as st

from pluralrw.terms import (
    BOT,
    PositionError,
    Signature,
    SignatureError,
    app,
    approx_leq,
    apply_subst,
    down_closure,
    is_linear,
    match_value,
    positions,
    replace_at,
    shell,
    subterm_at,
    term_key,
    var,
)

import pytest

X = var("X")
Y = var("Y")
zero = app("0")
one = app("1")


def c(*args):
    return app("c", args)


def d(*args):
    return app("d", args)


def f(*args):
    return app("f", args)


SIG = Signature(
    constructors={"0": 0, "1": 0, "c": 2, "d": 2},
    functions={"f": 1},
)


def test_interning_gives_identity_equality():
    assert c(zero, one) is c(app("0"), app("1"))
    assert var("X") is X
    assert app("0") is not app("1")


def test_approx_leq_bottom_is_least():
    assert approx_leq(BOT, d(zero, one))
    assert approx_leq(BOT, BOT)
    assert approx_leq(BOT, X)


def test_approx_leq_pointwise():
    assert approx_leq(c(BOT, zero), c(one, zero))
    assert not approx_leq(d(zero, one), d(one, one))
    assert not approx_leq(X, Y)
    assert not approx_leq(zero, BOT)
    assert not approx_leq(c(zero, zero), d(zero, zero))


def test_shell_cuts_function_roots():
    assert shell(f(zero), SIG) is BOT
    assert shell(c(f(zero), one), SIG) is c(BOT, one)
    assert shell(d(zero, one), SIG) is d(zero, one)
    assert shell(X, SIG) is X
    assert shell(BOT, SIG) is BOT


def test_apply_subst():
    assert apply_subst(d(X, X), {"X": zero}) is d(zero, zero)
    assert apply_subst(X, {}) is X
    alt = app("?", (zero, one))
    assert apply_subst(app("c2", (X,)), {"X": alt}) is app("c2", (alt,))


def test_match_value_decomposes():
    assert match_value(app("c2", (X,)), app("c2", (zero,))) == {"X": zero}
    assert match_value(app("c2", (X,)), BOT) is None
    assert match_value(d(X, Y), d(zero, BOT)) == {"X": zero, "Y": BOT}


def test_match_value_drops_identity_bindings():
    # dom(theta) holds only variables actually moved
    assert match_value(d(X, Y), d(X, zero)) == {"Y": zero}
    assert match_value(X, X) == {}


def test_match_value_mismatch():
    assert match_value(zero, one) is None
    assert match_value(c(X, Y), d(zero, one)) is None
    assert match_value(zero, X) is None


def test_positions_and_subterm():
    t = f(c(zero, one))
    assert subterm_at(t, (1, 1)) is zero
    assert subterm_at(t, ()) is t
    assert list(positions(t)) == [(), (1,), (1, 1), (1, 2)]


def test_replace_at():
    nine = app("9")
    assert replace_at(d(zero, one), (2,), nine) is d(zero, nine)
    assert replace_at(zero, (), nine) is nine


def test_position_errors():
    with pytest.raises(PositionError):
        subterm_at(X, (1,))
    with pytest.raises(PositionError):
        replace_at(d(zero, one), (3,), zero)
    with pytest.raises(PositionError):
        subterm_at(d(zero, one), (1, 1))


def test_signature_rejects_overlap():
    with pytest.raises(SignatureError):
        Signature(constructors={"f": 1}, functions={"f": 1})
    with pytest.raises(SignatureError):
        Signature(functions={"?": 3})
    with pytest.raises(SignatureError):
        Signature(constructors={"tt": 2})


def test_signature_builtins_present():
    s = Signature()
    assert s.functions["?"] == 2
    assert s.functions["if_then"] == 2
    assert s.constructors["tt"] == 0


def test_signature_cterm_and_arity():
    assert SIG.is_cterm(c(zero, X))
    assert not SIG.is_cterm(f(zero))
    # unknown symbols count as constructors
    assert SIG.is_cterm(app("fresh"))
    with pytest.raises(SignatureError):
        SIG.check_arities(f(zero, one))


def test_ensure_constant():
    s = Signature(functions={"g": 1})
    s.ensure_constant("pepe")
    assert s.constructors["pepe"] == 0
    s.ensure_constant("pepe")
    with pytest.raises(SignatureError):
        s.ensure_constant("g")


def test_down_closure_small():
    assert down_closure(BOT) == {BOT}
    assert down_closure(X) == {BOT, X}
    assert down_closure(c(zero, one)) == {
        BOT,
        c(BOT, BOT),
        c(zero, BOT),
        c(BOT, one),
        c(zero, one),
    }


def test_linear():
    assert is_linear((c(X, Y),))
    assert not is_linear((c(X, X),))
    assert not is_linear((X, c(Y, X)))
    assert is_linear(())


def test_canonical_order_groups_by_depth():
    ordered = sorted([d(zero, one), BOT, X, zero, c(zero, zero)], key=term_key)
    assert ordered[0] is BOT
    assert ordered[1] is X
    assert ordered[2] is zero
    assert {ordered[3], ordered[4]} == {d(zero, one), c(zero, zero)}
    assert ordered[3] is c(zero, zero)  # 'c' before 'd' at equal depth


# random partial c-terms over {0, 1, c/2, d/2} and variables X, Y, Z

cterms = st.recursive(
    st.sampled_from([BOT, zero, one, var("X"), var("Y"), var("Z")]),
    lambda sub: st.tuples(st.sampled_from(["c", "d"]), sub, sub).map(
        lambda t: app(t[0], (t[1], t[2]))
    ),
    max_leaves=8,
)


@given(cterms, cterms, cterms)
def test_approx_leq_is_a_partial_order(a, b, e):
    assert approx_leq(a, a)
    if approx_leq(a, b) and approx_leq(b, a):
        assert a is b
    if approx_leq(a, b) and approx_leq(b, e):
        assert approx_leq(a, e)


@given(cterms)
def test_bottom_below_everything(t):
    assert approx_leq(BOT, t)


@given(cterms, cterms)
def test_shell_monotone(a, b):
    if approx_leq(a, b):
        assert approx_leq(shell(a, SIG), shell(b, SIG))


@given(cterms)
def test_shell_fixes_cterms(t):
    assert shell(t, SIG) is t


@given(cterms)
def test_down_closure_members_below(t):
    members = down_closure(t)
    assert t in members
    assert all(approx_leq(u, t) for u in members)


def _linearize(t, seen, counter):
    """Rewrite a random term into a total linear pattern: repeated variables
    and _|_ leaves become fresh variables."""
    if t is BOT or (t.kind == 1 and t.name in seen):
        fresh = var("V%d" % counter[0])
        counter[0] += 1
        return fresh
    if t.kind == 1:
        seen.add(t.name)
        return t
    if t.children:
        return app(t.name, tuple(_linearize(c_, seen, counter) for c_ in t.children))
    return t


@given(cterms, st.dictionaries(st.sampled_from(["X", "Y", "Z"]), cterms))
def test_match_recovers_applied_substitution(t, binding):
    pattern = _linearize(t, set(), [0])
    image = apply_subst(pattern, binding)
    got = match_value(pattern, image)
    assert got is not None
    assert apply_subst(pattern, got) is image
    assert set(got) <= pattern.varset
