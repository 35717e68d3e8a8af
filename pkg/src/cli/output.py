"""Writing command results as JSON or CSV to a file or stdout."""

import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Dict, Optional

logger = logging.getLogger(__name__)


def to_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + '\n'


def to_csv(rows: List[Dict[str, Any]], columns: List[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _cell(row.get(k, '')) for k in columns})
    return buffer.getvalue()


def _cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit(text: str, out: Optional[Path]) -> None:
    """Write to ``out`` or stdout"""
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding='utf-8')
    logger.info(f"Wrote {out}")
