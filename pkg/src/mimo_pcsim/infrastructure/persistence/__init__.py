from mimo_pcsim.infrastructure.persistence.result_store import (
    RESULT_COLUMNS,
    cdf_frame,
    emit_cdf,
    emit_csv,
    rows_frame,
)

__all__ = ["RESULT_COLUMNS", "cdf_frame", "emit_cdf", "emit_csv", "rows_frame"]
