from __future__ import annotations

import json

import pytest

from starkit import parse_schedule

FIG1D_DOC = {
    "name": "fig1d",
    "ports": [
        {"id": "in0", "dir": "input", "width": 8},
        {"id": "out0", "dir": "output", "width": 8},
    ],
    "data": [{"id": d, "width": 8} for d in "abcdef"],
    "events": [
        {"data": "a", "port": "in0", "cycle": 0, "kind": "write"},
        {"data": "c", "port": "in0", "cycle": 1, "kind": "write"},
        {"data": "b", "port": "in0", "cycle": 2, "kind": "write"},
        {"data": "e", "port": "in0", "cycle": 5, "kind": "write"},
        {"data": "f", "port": "in0", "cycle": 7, "kind": "write"},
        {"data": "d", "port": "in0", "cycle": 9, "kind": "write"},
        {"data": "c", "port": "out0", "cycle": 3, "kind": "read"},
        {"data": "a", "port": "out0", "cycle": 4, "kind": "read"},
        {"data": "e", "port": "out0", "cycle": 6, "kind": "read"},
        {"data": "b", "port": "out0", "cycle": 8, "kind": "read"},
        {"data": "d", "port": "out0", "cycle": 10, "kind": "read"},
        {"data": "f", "port": "out0", "cycle": 11, "kind": "read"},
    ],
}


@pytest.fixture(scope="session")
def fig1d_text() -> str:
    return json.dumps(FIG1D_DOC)


@pytest.fixture(scope="session")
def fig1d(fig1d_text):
    return parse_schedule(fig1d_text)
