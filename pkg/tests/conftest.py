""" Shared fixtures """

import pytest

from builders import database, formula, schemas_of


@pytest.fixture
def schemas():
    return schemas_of()


@pytest.fixture
def make_db(schemas):
    def make(text):
        return database(schemas, text)

    return make


@pytest.fixture
def make_formula(schemas):
    def make(text):
        return formula(schemas, text)

    return make
