import functools
import os

import pytest
from hypothesis import HealthCheck, settings

from legcard.dga import build_dga
from legcard.front import EXAMPLES, load_example

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@functools.lru_cache(maxsize=None)
def front_of(name):
    return load_example(name)


@functools.lru_cache(maxsize=None)
def dga_of(name):
    return build_dga(front_of(name))


@functools.lru_cache(maxsize=None)
def augs_of(name, q, m):
    from legcard.aug import enumerate_augmentations

    return tuple(enumerate_augmentations(dga_of(name), q, m))


@functools.lru_cache(maxsize=None)
def classes_of(name, q, m):
    """Isomorphism classes as lists of augmentations."""
    from legcard.augcat import iso_classes

    return iso_classes(dga_of(name), q, m, augs_of(name, q, m))


@functools.lru_cache(maxsize=None)
def report_of(name, q, m):
    from legcard.augcat import class_data

    return class_data(dga_of(name), q, m)


@pytest.fixture(params=EXAMPLES)
def example(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
