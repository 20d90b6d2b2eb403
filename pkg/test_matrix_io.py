# test_matrix_io.py

import numpy as np
import pytest

from polytransform.errors import MatrixFormatError
from polytransform.matrix_io import parse_entry, parse_matrix, read_matrix, render_entry, render_matrix, write_matrix
from polytransform.transforms import TransformName, named_transform


def test_render_entry():
    assert render_entry(1) == "1+0i"
    assert render_entry(-1j) == "0-1i"
    assert render_entry(complex(-0.0, -0.0)) == "0+0i"
    assert render_entry(0.1 + 2.5j) == "0.10000000000000001+2.5i"
    assert render_entry(-3e5j) == "0-300000i"


def test_render_matrix_layout():
    assert render_matrix([[1, 2j], [-3, 0]]) == "1+0i, 0+2i\n-3+0i, 0+0i\n"
    assert render_matrix(named_transform("dft", 4)).splitlines()[1] == "1+0i, 0-1i, -1+0i, 0+1i"
    with pytest.raises(MatrixFormatError):
        render_matrix([1, 2, 3])


@pytest.mark.parametrize("text, expected", [
    ("1+0i", 1),
    ("-2.5-0.5i", -2.5 - 0.5j),
    (" 3e-4+1E+2i ", 3e-4 + 100j),
    (".5-.25i", 0.5 - 0.25j),
])
def test_parse_entry(text, expected):
    assert parse_entry(text) == expected


@pytest.mark.parametrize("text", ["1", "i", "1+i", "1+2j", "abc", "1+-2i", ""])
def test_parse_entry_rejects(text):
    with pytest.raises(MatrixFormatError):
        parse_entry(text)


def test_parse_matrix_errors_carry_line_numbers():
    with pytest.raises(MatrixFormatError, match="line 2"):
        parse_matrix("1+0i, 2+0i\n1+0i, x\n")
    with pytest.raises(MatrixFormatError, match="line 3: expected 2 entries"):
        parse_matrix("1+0i, 2+0i\n\n1+0i\n")


def test_parse_empty_text():
    assert parse_matrix("").shape == (0, 0)
    assert parse_matrix("\n  \n").shape == (0, 0)


@pytest.mark.parametrize("name", list(TransformName))
def test_catalog_survives_rendering(name):
    for n in (1, 2, 5, 16, 64):
        matrix = named_transform(name, n)
        np.testing.assert_array_equal(parse_matrix(render_matrix(matrix)), matrix)


def test_write_and_read(tmp_path, capsys, rng):
    matrix = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    path = tmp_path / "m.txt"
    write_matrix(matrix, path)
    np.testing.assert_array_equal(read_matrix(path), matrix)

    write_matrix(np.eye(2))
    assert capsys.readouterr().out == "1+0i, 0+0i\n0+0i, 1+0i\n"
    write_matrix([[2]], "-")
    assert capsys.readouterr().out == "2+0i\n"
