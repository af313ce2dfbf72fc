import csv
import itertools

import pytest


@pytest.fixture
def make_csv(tmp_path):
    """Factory writing a CSV from a header and rows, returning its path."""
    counter = itertools.count()

    def build(columns, rows, name=None):
        path = tmp_path / (name or f"table_{next(counter)}.csv")
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            writer.writerows(rows)
        return path

    return build
