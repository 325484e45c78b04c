import pytest

from intrec.kernel import Lam, Var, apply, apply2, encode, numeral
from intrec.surface import CompileError, ParseError, ScopeError, compile as compile_src


def test_identity_compiles_to_code_of_identity():
    assert compile_src("fun x -> x") == encode(Lam(Var(0)))


def test_unbound_name_is_a_scope_error():
    with pytest.raises(ScopeError):
        compile_src("fun x -> y")


def test_truncated_input_is_a_parse_error():
    with pytest.raises(ParseError):
        compile_src("fun x ->")


def test_scope_error_is_a_compile_error():
    assert issubclass(ScopeError, CompileError)


@pytest.mark.parametrize("n, want", [(0, 1), (1, 1), (3, 6), (5, 120)])
def test_factorial_by_let_rec(n, want):
    fac = compile_src("let rec f n = ifz n then 1 else mul n (f (pred n)) in f")
    assert apply(fac, numeral(n)).code == numeral(want)


def test_only_the_chosen_branch_runs():
    c = compile_src("fun n -> ifz n then 7 else omega")
    assert apply(c, numeral(0)).code == numeral(7)


@pytest.mark.parametrize("a, b", [(0, 0), (3, 4), (10, 2)])
def test_arithmetic_prelude(a, b):
    assert apply2(compile_src("add"), numeral(a), numeral(b)).code == numeral(a + b)
    assert apply2(compile_src("mul"), numeral(a), numeral(b)).code == numeral(a * b)
    assert apply2(compile_src("sub"), numeral(a), numeral(b)).code == numeral(max(a - b, 0))


def test_comments_are_ignored():
    assert compile_src("fun x -> x -- the identity") == compile_src("fun x -> x")


def test_environment_splices_codes():
    c = compile_src("fun x -> g (g x)", {"g": compile_src("succ")})
    assert apply(c, numeral(1)).code == numeral(3)
