"""CSV and manifest emission."""

import csv
import hashlib
import io
import json
import math
import os
import tempfile
from pathlib import Path


def format_cell(value):
    if isinstance(value, str):
        return value
    value = float(value)
    if math.isinf(value) and value < 0:
        return ""
    return format(value, ".9g")


def render_csv(table):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([format_cell(v) for v in row])
    return buf.getvalue().encode("utf-8")


def _atomic_write(path, data):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item"):
        return obj.item()
    return obj


def write_artifact(artifact, out_dir, manifest):
    """Write every table of ``artifact`` and a manifest into ``out_dir``.

    All CSV bytes are rendered before anything touches disk; each file is
    written atomically. Returns the manifest path.
    """
    out_dir = Path(out_dir)
    rendered = {name: render_csv(table) for name, table in artifact.tables.items()}
    for name, data in rendered.items():
        _atomic_write(out_dir / name, data)
    manifest = dict(manifest)
    manifest["experiment"] = artifact.experiment
    manifest["outputs"] = {name: hashlib.sha256(data).hexdigest() for name, data in rendered.items()}
    manifest["details"] = artifact.details
    path = out_dir / f"manifest__{artifact.experiment}.json"
    _atomic_write(path, (json.dumps(_jsonable(manifest), indent=2, sort_keys=True) + "\n").encode("utf-8"))
    return path
