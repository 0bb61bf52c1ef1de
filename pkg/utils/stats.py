"""
Tabular summaries for bounds, coverage and acceptance reports
"""

import pandas as pd

BOUND_COLUMNS = ["quantity", "kind", "formula", "value", "condition", "instance"]
COVERAGE_COLUMNS = ["construction", "N", "k", "q", "size", "coverage", "verdict", "method", "scanned", "elapsed_ms"]
RESULT_COLUMNS = ["criterion", "q", "passed", "detail", "elapsed_ms"]


def bounds_table(rows):
    """Bounds rows as a DataFrame, one row per (quantity, kind)

    Args:
        rows (list): Dicts with the BOUND_COLUMNS keys; "instance" may be missing

    Returns:
        DataFrame: Rows in input order
    """
    df = pd.DataFrame(rows, columns=BOUND_COLUMNS)
    df['instance'] = df['instance'].where(df['instance'].notna(), "")
    return df


def coverage_table(arrangements):
    """One row per certified arrangement"""
    records = []
    for arr in arrangements:
        cert = arr.certificate
        records.append({
            "construction": arr.provenance.get("construction", ""),
            "N": arr.N,
            "k": arr.k,
            "q": arr.q,
            "size": len(arr),
            "coverage": len(arr.point_set()),
            "verdict": cert.verdict if cert else "",
            "method": cert.method if cert else "",
            "scanned": cert.scanned if cert else 0,
            "elapsed_ms": cert.elapsed_ms if cert else 0.0,
        })
    return pd.DataFrame(records, columns=COVERAGE_COLUMNS)


def results_table(results):
    """Acceptance check results; results is a list of dicts with RESULT_COLUMNS keys"""
    df = pd.DataFrame(results, columns=RESULT_COLUMNS)
    df['passed'] = df['passed'].astype(bool)
    return df


def summarize_results(df):
    """Checks run and passed per criterion

    Returns:
        tuple: (summary DataFrame, all_passed)
    """
    if df.empty:
        return pd.DataFrame(columns=["criterion", "checks", "passed"]), True
    summary = df.groupby('criterion', sort=False).agg(
        checks=('passed', 'size'),
        passed=('passed', 'sum'),
    ).reset_index()
    return summary, bool(df['passed'].all())


def to_text(df):
    """Aligned plain-text rendering"""
    if df.empty:
        return "(empty)"
    return df.to_string(index=False)


def to_records(df):
    return df.to_dict(orient='records')
