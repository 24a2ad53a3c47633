from __future__ import annotations

import pytest

from conftest import CORPUS, load, make_profile
from rplkit.corpus import load_example
from rplkit.parser import load_program, parse_program, parse_source
from rplkit.diagnostics import ParseError
from rplkit.printer import pretty
from rplkit.profiles import preprocess
from rplkit.syntax import AsyncCall, Assign, outline


def diagnostics_of(source: str) -> list[str]:
    _program, diags = load_program(source)
    return [d.message for d in diags if d.severity == "error"]


def test_supply_chain_shape(supply_source):
    program = load(supply_source)
    assert program.module_name == "Retail"
    assert [i.name for i in program.interfaces] == ["Retailer", "Warehouse", "Cargo", "Supplier"]
    assert [c.name for c in program.classes] == ["Retailer", "Warehouse", "Cargo", "Supplier"]
    assert [(g.category, len(g.descriptors)) for g in program.resources] == [
        ("Van", 8), ("Driver", 8), ("Helper", 4)]
    ids = [d.rid for g in program.resources for d in g.descriptors]
    assert ids == list(range(1, 21))


def test_supply_chain_zero_diagnostics(supply_source):
    _program, diags = load_program(preprocess(supply_source, make_profile()))
    assert diags == []


def test_minimal_program():
    program = parse_program("module M;\n{\n}\n")
    assert program.module_name == "M"
    assert program.classes == () and program.interfaces == ()
    assert program.main.stmts == ()
    assert program.resources == ()


def test_async_call_node_shape():
    src = """
module M;
interface S { Int order_goods(); }
class S implements S { Int order_goods() { return 1; } }
{
    S sup = new S();
    Fut<Int> f2;
    f2 = !order_goods(sup) after dl 220;
    await f2?;
}
"""
    program = parse_program(src)
    assign = program.main.stmts[2]
    assert isinstance(assign, Assign)
    call = assign.value
    assert isinstance(call, AsyncCall)
    assert call.method == "order_goods"
    assert call.after_futs == ()
    assert call.deadline.value == 220
    assert call.span.line == 8


def test_after_dependency_list():
    src = """
module M;
interface S { Int a(); Int b(); }
class S implements S { Int a() { return 1; } Int b() { return 2; } }
{
    S s = new S();
    Fut<Int> f1;
    Fut<Int> f2;
    f1 = !a(s) after dl 10;
    f2 = !b(s) after f1 dl 20;
}
"""
    program = parse_program(src)
    call = program.main.stmts[4].value
    assert call.after_futs == ("f1",)


def test_statement_spans(supply_source, check_goods_line):
    program = load(supply_source)
    retailer = program.cls("Retailer")
    call_stmt = retailer.methods[0].body.stmts[4]
    assert call_stmt.span.line == check_goods_line


def test_roundtrip_corpus():
    prof = make_profile(cases=2)
    for name in CORPUS:
        text = preprocess(load_example(name), prof)
        program, diags = load_program(text)
        assert program is not None, (name, diags)
        again, diags2 = load_program(pretty(program))
        assert diags2 == []
        assert again == program, name
        # printing is a fixed point after one round
        assert pretty(again) == pretty(program)


def test_comments_ignored():
    program = parse_program("// header\nmodule M; // trailing\n{\n// inside\n}\n")
    assert program.module_name == "M"


def test_syntax_error_has_span():
    program, diags = parse_source("module M;\n{\n    Int x = ;\n}\n")
    assert program is None
    assert any(d.severity == "error" and d.span.line == 3 for d in diags)
    assert all(d.span.line >= 1 and d.span.column >= 1 for d in diags)


def test_diagnostic_json_shape():
    _program, diags = parse_source("module M;\n{\n    Int x = ;\n}\n")
    record = diags[0].to_json()
    assert set(record) == {"line", "column", "severity", "message"}


def test_multiple_errors_with_resync():
    src = "module M;\n{\n    Int x = ;\n    Int y = ;\n}\n"
    _program, diags = parse_source(src)
    assert len([d for d in diags if d.severity == "error"]) >= 2


def test_missing_deadline_rejected():
    errs = diagnostics_of(
        "module M;\ninterface S { Int a(); }\nclass S implements S { Int a() { return 1; } }\n"
        "{\n    S s = new S();\n    Fut<Int> f;\n    f = !a(s);\n}\n")
    assert any("dl" in e for e in errs)


def test_undeclared_method_rejected():
    errs = diagnostics_of(
        "module M;\ninterface S { Int a(); }\nclass S implements S { Int a() { return 1; } }\n"
        "{\n    S s = new S();\n    Fut<Int> f;\n    f = !nope(s) after dl 1;\n}\n")
    assert any("no method 'nope'" in e for e in errs)


def test_arity_mismatch_rejected():
    errs = diagnostics_of(
        "module M;\ninterface S { Int a(Int x); }\nclass S implements S { Int a(Int x) { return x; } }\n"
        "{\n    S s = new S();\n    Fut<Int> f;\n    f = !a(s) after dl 1;\n}\n")
    assert any("argument" in e for e in errs)


def test_unknown_type_rejected():
    errs = diagnostics_of("module M;\n{\n    Ghost g = new Ghost();\n}\n")
    assert any("unknown type 'Ghost'" in e for e in errs)


def test_class_must_cover_interface():
    errs = diagnostics_of(
        "module M;\ninterface S { Int a(); Int b(); }\n"
        "class S implements S { Int a() { return 1; } }\n{\n}\n")
    assert any("missing method 'b'" in e for e in errs)


def test_await_requires_future_type():
    errs = diagnostics_of("module M;\n{\n    Int x = 1;\n    await x?;\n}\n")
    assert any("Fut" in e for e in errs)


def test_after_requires_declared_future():
    errs = diagnostics_of(
        "module M;\ninterface S { Int a(); }\nclass S implements S { Int a() { return 1; } }\n"
        "{\n    S s = new S();\n    Fut<Int> f;\n    f = !a(s) after ghost dl 1;\n}\n")
    assert any("ghost" in e for e in errs)


def test_method_must_return_on_every_path():
    errs = diagnostics_of(
        "module M;\ninterface S { Int a(Int x); }\n"
        "class S implements S { Int a(Int x) { if (x == 1) { return 1; } } }\n{\n}\n")
    assert any("without a return" in e for e in errs)


def test_duplicate_declaration_in_block():
    errs = diagnostics_of("module M;\n{\n    Int x = 1;\n    Int x = 2;\n}\n")
    assert any("already declared" in e for e in errs)


def test_duplicate_parameter_names():
    errs = diagnostics_of(
        "module M;\ninterface S { Int a(Int x, Int x); }\n"
        "class S implements S { Int a(Int x, Int y) { return x; } }\n{\n}\n")
    assert any("duplicate parameter" in e for e in errs)


def test_keywords_not_identifiers():
    program, diags = parse_source("module M;\n{\n    Int while = 1;\n}\n")
    assert program is None and diags


def test_mixed_category_group_rejected():
    _program, diags = parse_source(
        "module M;\n{\n}\nResources:\nVan,1,1,1\nDriver,1,1,1\n")
    assert any("mixes categories" in d.message for d in diags)


def test_outline_supply(supply_source):
    program = load(supply_source)
    entries = [(kind, name) for kind, name, _span in outline(program)]
    assert ("class", "Retailer") in entries
    assert ("method", "process_order") in entries
    assert entries.index(("interface", "Retailer")) < entries.index(("class", "Retailer"))


def test_outline_counts():
    src = ("module M;\ninterface S { Int a(); Int b(); }\n"
           "class S implements S { Int a() { return 1; } Int b() { return 2; } }\n{\n}\n")
    entries = outline(parse_program(src))
    assert [(k, n) for k, n, _ in entries] == [
        ("interface", "S"), ("class", "S"), ("method", "a"), ("method", "b")]


def test_outline_empty_main():
    assert outline(parse_program("module M;\n{\n}\n")) == []


def test_parse_program_raises_with_diagnostics():
    with pytest.raises(ParseError) as exc:
        parse_program("module M;\n{\n    Int x = ;\n}\n")
    assert exc.value.diagnostics
