import random
from pathlib import Path

import pytest

from fwpre.generate import GenConfig, random_program
from fwpre.parser import parse_file

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def corpus_files():
    return sorted(CORPUS.glob("*.fw"))


@pytest.fixture
def motivating():
    return parse_file(CORPUS / "motivating.fw")


def programs(n, seed, cfg=GenConfig()):
    rng = random.Random(seed)
    return [random_program(rng, cfg) for _ in range(n)]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
