"""
Interrupted and resumed range scans
===================================

A scan writes each finished chunk to a journal.  If the process dies, the
journal is read back, the partial tail is discarded and the scan carries on
from the first unfinished chunk.
"""

import tempfile
from pathlib import Path

from omegaquad.kernel import DFilter
from omegaquad.scan import ScanJob, read_journal, resume_scan, run, scan

flt = DFilter(((4, (2,)),), ("squarefree",))

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "scan.jsonl"
    job = ScanJob(1, 100_000, "m_odd", 2, flt, chunk_size=5_000, journal_path=str(path))

    # Pretend the process is killed after 7 chunks, halfway through a line.
    partial = list(scan(job, stop_after=7))
    raw = path.read_bytes()
    path.write_bytes(raw[:-25])

    state = read_journal(path)
    print(f"{len(partial)} results before the crash; journal keeps {len(state.completed_chunks)} chunks, "
          f"drops {state.discarded_lines} line(s), restarts at d = {state.next_lo}")

    resumed = list(resume_scan(path, workers=2))
    fresh = run(ScanJob(1, 100_000, "m_odd", 2, flt, chunk_size=5_000))
    print(f"resumed run: {len(resumed)} values, identical to a fresh run: {resumed == fresh}")
    print("largest:", resumed[-1].d)
