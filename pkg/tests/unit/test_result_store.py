import numpy as np
import pandas as pd
import pytest

from mimo_pcsim.domain.entities import ResultRow
from mimo_pcsim.infrastructure.persistence import emit_cdf, emit_csv
from mimo_pcsim.infrastructure.persistence.result_store import (
    RESULT_COLUMNS,
    cdf_frame,
    rows_frame,
)


@pytest.fixture
def rows():
    return [
        ResultRow(25.0, "noPC", "sum_rate", 41.25, 0.5, 4),
        ResultRow(25.0, "PC-pi", "sum_rate", 30.0, 0.25, 4),
    ]


def test_rows_frame_column_order(rows):
    """Test the fixed CSV header."""
    frame = rows_frame(rows)
    assert tuple(frame.columns) == RESULT_COLUMNS
    assert frame.loc[1, "scheme"] == "PC-pi"
    with pytest.raises(ValueError):
        rows_frame([])


def test_emit_csv_round_trip(rows, test_data_dir):
    """Test that the CSV is written to a fresh directory and reads back."""
    path = emit_csv(rows, test_data_dir / "nested" / "out.csv")
    text = path.read_text()
    assert text.splitlines()[0] == "sweep,scheme,metric,mean,stderr,n"
    back = pd.read_csv(path)
    assert back["mean"].tolist() == [41.25, 30.0]
    assert back["n"].tolist() == [4, 4]


def test_cdf_frame():
    """Test the empirical CDF ranks."""
    frame = cdf_frame([3.0, 1.0, 2.0, 2.0])
    np.testing.assert_allclose(frame["value"], [1.0, 2.0, 2.0, 3.0])
    np.testing.assert_allclose(frame["probability"], [0.25, 0.5, 0.75, 1.0])
    with pytest.raises(ValueError):
        cdf_frame([])


def test_emit_cdf(test_data_dir):
    """Test writing a CDF file."""
    path = emit_cdf(np.array([[0.5, 1.5]]), test_data_dir / "cdf.csv")
    assert path.read_text().splitlines() == ["value,probability", "0.5,0.5", "1.5,1"]
