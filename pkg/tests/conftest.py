"""Shared fixtures: the bloggers fixture graph and its three queries."""

from __future__ import annotations

import pathlib

import pytest

from wdsparql import parse_ntriples, parse_query

DATA_DIR = pathlib.Path(__file__).parent / "data"


def load_query(name: str):
    return parse_query((DATA_DIR / name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def bloggers_graph():
    return parse_ntriples((DATA_DIR / "bloggers.nt").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def join_query():
    """Two-pattern BGP: (?x maker ?y) AND (?z name ?u)."""
    return load_query("bloggers_join.rq")


@pytest.fixture(scope="session")
def optional_type_query():
    """The well-designed variant: maker's type is optional (?v)."""
    return load_query("bloggers_optional_type.rq")


@pytest.fixture(scope="session")
def leaky_var_query():
    """The rejected variant: optional ?z reused outside the OPTIONAL."""
    return load_query("bloggers_leaky_var.rq")
