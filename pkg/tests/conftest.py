import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the oracle module

from ethicalrisk import Audit, builtin_ers_v1, load_example_audit


@pytest.fixture(scope="session")
def fw():
    return builtin_ers_v1()


@pytest.fixture(scope="session")
def fw_gated():
    return builtin_ers_v1("gated")


@pytest.fixture(scope="session")
def alpha():
    return load_example_audit("alpha_ltd")


@pytest.fixture(scope="session")
def beta():
    return load_example_audit("beta_ltd")


def make_audit(fw, answers: dict[str, str], mode=None) -> Audit:
    from ethicalrisk import QuestionTag

    return Audit(
        framework_id=fw.id,
        framework_version=fw.version,
        answers={QuestionTag.parse(t): a for t, a in answers.items()},
        subject={"organization": "test"},
        mode=mode,
    )


def all_answers(fw, key: str) -> dict[str, str]:
    return {str(q.tag): key for q in fw.questions}


def min_value_answers(fw) -> dict[str, str]:
    """Every question answered with its zero-value option."""
    answers = {}
    for q in fw.questions:
        zero = min(q.options, key=lambda o: o.value.scaled)
        answers[str(q.tag)] = zero.key
    return answers


def random_answers(fw, rng: random.Random) -> dict[str, str]:
    return {str(q.tag): rng.choice(q.option_keys()) for q in fw.questions}
