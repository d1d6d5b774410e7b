import pytest

from crossmod.actor import validate_2crossed
from crossmod.derivations import enumerate_fder_star
from crossmod.io import (
    FormatSyntaxError,
    ParseError,
    SemanticError,
    from_crossed_module,
    from_twocrossed,
    load,
    parse,
    serialize,
    to_crossed_module,
    to_twocrossed,
)
from crossmod.xmod import validate_crossed_module
from conftest import CORPUS, TWO_NAMES, XMOD_NAMES, actor, fder_star, two, xmod

C2C2 = (CORPUS / "c2c2.xmod").read_text()


@pytest.mark.parametrize("name", XMOD_NAMES)
def test_xmod_roundtrip_is_canonical(name):
    text = serialize(from_crossed_module(xmod(name)))
    doc = parse(text)
    assert serialize(doc) == text
    y = to_crossed_module(doc)
    assert validate_crossed_module(y).ok
    assert enumerate_fder_star(y).order == fder_star(name).order


@pytest.mark.parametrize("name", TWO_NAMES)
def test_2xmod_roundtrip(name):
    t = two(name)
    text = serialize(from_twocrossed(t))
    u = to_twocrossed(parse(text))
    assert serialize(from_twocrossed(u)) == text
    assert u.orders == t.orders
    assert validate_2crossed(u).ok


def test_actor_document_roundtrip():
    t = actor("c3c2zero")
    u = to_twocrossed(parse(serialize(from_twocrossed(t))))
    assert (u.d1, u.d2, u.lift) == (t.d1, t.d2, t.lift)


def test_corpus_files_parse():
    files = sorted(CORPUS.glob("*.xmod")) + sorted(CORPUS.glob("*.2xmod"))
    assert len(files) >= 12
    for path in files:
        doc = load(path)
        if doc.kind == "xmod":
            assert validate_crossed_module(to_crossed_module(doc)).ok, path
        else:
            assert validate_2crossed(to_twocrossed(doc)).ok, path


def test_corpus_c2c2_counts():
    x = to_crossed_module(load(CORPUS / "c2c2.xmod"))
    assert enumerate_fder_star(x).order == 2


def test_bytes_and_comments():
    text = C2C2.replace("OBJECTS\n", "# a comment\nOBJECTS  # trailing\n")
    assert serialize(parse(text.encode())) == serialize(parse(C2C2))


def test_blank_lines_and_order_of_entries_do_not_matter():
    lines = C2C2.splitlines()
    i = lines.index("COMP")
    lines[i + 1], lines[i + 4] = lines[i + 4], lines[i + 1]
    assert serialize(parse("\n".join(lines) + "\n\n")) == serialize(parse(C2C2))


def test_missing_version():
    with pytest.raises(FormatSyntaxError) as exc:
        parse("kind xmod\nOBJECTS\n*\n")
    assert "version" in str(exc.value)
    # reported at the first section header
    assert exc.value.line == 2


def test_bad_field_count_has_position():
    text = C2C2.replace("0 * *\n", "0 *\n")
    with pytest.raises(FormatSyntaxError) as exc:
        parse(text)
    assert exc.value.line == text.splitlines().index("0 *") + 1
    assert exc.value.column == 1


def test_undeclared_element_has_column():
    text = C2C2.replace("*:1 1 *:1", "*:1 1 *:7")
    with pytest.raises(SemanticError) as exc:
        parse(text)
    assert exc.value.line == text.splitlines().index("*:1 1 *:7") + 1
    assert exc.value.column == 7
    assert "*:7" in exc.value.message


def test_partial_table_rejected():
    text = C2C2.replace("1 1 0\n", "")
    with pytest.raises(SemanticError, match="not total"):
        parse(text)


def test_duplicate_entry_rejected():
    with pytest.raises(SemanticError, match="duplicate"):
        parse(C2C2.replace("1 1 0\n", "1 1 0\n1 1 0\n"))


def test_unknown_kind_and_bad_utf8():
    with pytest.raises(FormatSyntaxError):
        parse(C2C2.replace("kind xmod", "kind other"))
    with pytest.raises(ParseError):
        parse(b"version 1\n\xff\n")


def test_no_objects_rejected():
    with pytest.raises(ParseError):
        parse("version 1\nkind xmod\nOBJECTS\n")


def test_wrong_values_are_left_to_validators():
    # the identity arrow acting nontrivially parses but breaks the unit law
    text = C2C2.replace("*:1 0 *:1", "*:1 0 *:0")
    x = to_crossed_module(parse(text))
    assert not validate_crossed_module(x).ok
