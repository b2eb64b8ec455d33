import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from knotfold.corpus import load_corpus
from knotfold.grid import random_grid
from knotfold.pipeline import run_pipeline


def random_suite(count: int, g_max: int = 10, seed_base: int = 1000):
    """Deterministic mixed-size random diagram suite."""
    sizes = [g for g in range(3, g_max + 1)]
    out = []
    for idx in range(count):
        g = sizes[idx % len(sizes)]
        seed = seed_base + idx
        out.append((g, seed, random_grid(g, seed)))
    return out


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def suite200():
    return random_suite(200)


@pytest.fixture(scope="session")
def pipelines200(suite200):
    return [(g, seed, run_pipeline(d)) for g, seed, d in suite200]


@pytest.fixture(scope="session")
def corpus_pipelines(corpus):
    return [(e, run_pipeline(e.diagram)) for e in corpus]
