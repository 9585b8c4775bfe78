"""Chunked range scans over d with an append-only journal for resuming.

Journal layout (one JSON object per line)::

    {"journal": "omegaquad-scan", "version": 1, "job": {...}, "ts": "..."}
    {"d": 9, "max_omega": 2, "witness_x": 1, "pass": true}
    ...
    {"chunk": [1, 5000], "count": 7, "ts": "..."}

Records of a chunk precede its marker.  Only chunks with a marker count as
done; anything after the last marker (including a torn final line) is
dropped and rescanned on resume.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .arith import SpfTable, build_spf
from .errors import ConfigurationError, JournalError
from .kernel import DFilter, Profile, get_profile, sweep
from .profile import Parity

log = logging.getLogger(__name__)

JOURNAL_TAG = "omegaquad-scan"
JOURNAL_VERSION = 1


@dataclass(frozen=True)
class ScanJob:
    lo: int
    hi: int
    profile: Profile
    threshold: int
    d_filter: DFilter = field(default_factory=DFilter)
    chunk_size: int = 10_000
    journal_path: str | None = None

    def __post_init__(self):
        if self.lo < 1 or self.lo > self.hi:
            raise ConfigurationError(f"need 1 <= lo <= hi, got lo={self.lo}, hi={self.hi}")
        if self.chunk_size < 1:
            raise ConfigurationError(f"chunk_size must be positive, got {self.chunk_size}")
        if self.threshold < 0:
            raise ConfigurationError(f"threshold must be nonnegative, got {self.threshold}")
        object.__setattr__(self, "profile", get_profile(self.profile))

    def chunks(self) -> list[tuple[int, int]]:
        return [(a, min(a + self.chunk_size - 1, self.hi)) for a in range(self.lo, self.hi + 1, self.chunk_size)]

    def sieve_limit(self) -> int:
        return self.profile.table_limit(self.hi)

    def to_dict(self) -> dict:
        p = asdict(self.profile)
        p["parity"] = Parity(p["parity"]).value
        return {
            "lo": self.lo,
            "hi": self.hi,
            "profile": p,
            "threshold": self.threshold,
            "d_filter": {
                "residues": [[m, list(rs)] for m, rs in self.d_filter.residues],
                "shapes": list(self.d_filter.shapes),
                "min_d": self.d_filter.min_d,
            },
            "chunk_size": self.chunk_size,
        }

    @classmethod
    def from_dict(cls, data: dict, journal_path: str | None = None) -> ScanJob:
        p = dict(data["profile"])
        p["parity"] = Parity(p["parity"])
        if p.get("residue") is not None:
            p["residue"] = tuple(p["residue"])
        f = data["d_filter"]
        flt = DFilter(
            tuple((int(m), tuple(rs)) for m, rs in f["residues"]),
            tuple(f["shapes"]),
            int(f.get("min_d", 1)),
        )
        return cls(
            int(data["lo"]),
            int(data["hi"]),
            Profile(**p),
            int(data["threshold"]),
            flt,
            int(data["chunk_size"]),
            journal_path,
        )


@dataclass(frozen=True)
class ResultRecord:
    d: int
    max_omega: int
    witness_x: int | None
    passed: bool

    def to_json(self) -> dict:
        return {"d": self.d, "max_omega": self.max_omega, "witness_x": self.witness_x, "pass": self.passed}

    @classmethod
    def from_json(cls, data: dict) -> ResultRecord:
        w = data["witness_x"]
        return cls(int(data["d"]), int(data["max_omega"]), None if w is None else int(w), bool(data["pass"]))


# -- sieve cache ---------------------------------------------------------------

_table_lock = threading.Lock()
_table: SpfTable | None = None


def shared_table(limit: int, override: int | None = None) -> SpfTable:
    """A sieve covering ``limit``; the largest one built so far is reused."""
    global _table
    if override is not None:
        if override < limit:
            raise ConfigurationError(f"sieve limit override {override} is below the required {limit}")
        limit = override
    with _table_lock:
        if _table is None or _table.limit < limit:
            log.info("building smallest-prime-factor table up to %d", limit)
            _table = build_spf(max(limit, 2))
        return _table


def env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from exc


def default_workers() -> int:
    n = env_int("QS_WORKERS")
    if n is None or n == 0:
        return os.cpu_count() or 1
    if n < 0:
        raise ConfigurationError(f"QS_WORKERS must be >= 0, got {n}")
    return n


# -- scanning ----------------------------------------------------------------------


def scan_chunk(job: ScanJob, lo: int, hi: int, table: SpfTable) -> list[ResultRecord]:
    ds = np.arange(lo, hi + 1, dtype=np.int64)
    keep = job.d_filter.mask(ds, table)
    if job.profile.residue is not None:
        m, r = job.profile.residue
        keep &= ds % m == r
    res = sweep(ds[keep], job.profile, job.threshold, table)
    return [
        ResultRecord(int(d), int(v), None if w < 0 else int(w), True)
        for d, v, w in zip(res.d, res.max_value, res.witness_x)
    ]


class _Journal:
    def __init__(self, path: str, job: ScanJob, fresh: bool):
        self.path = path
        try:
            self.fh = open(path, "w" if fresh else "a", encoding="utf-8")
            if fresh:
                self._write({"journal": JOURNAL_TAG, "version": JOURNAL_VERSION, "job": job.to_dict(), "ts": _now()})
        except OSError as exc:
            raise JournalError(f"cannot write journal {path}: {exc}") from exc

    def _write(self, obj: dict):
        self.fh.write(json.dumps(obj, sort_keys=True) + "\n")

    def commit(self, lo: int, hi: int, records: list[ResultRecord]):
        try:
            for r in records:
                self._write(r.to_json())
            self._write({"chunk": [lo, hi], "count": len(records), "ts": _now()})
            self.fh.flush()
        except OSError as exc:
            raise JournalError(f"journal write failed at chunk [{lo}, {hi}]: {exc}") from exc

    def close(self):
        self.fh.close()


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def scan(
    job: ScanJob,
    workers: int = 1,
    table: SpfTable | None = None,
    stop_after: int | None = None,
    _fresh_journal: bool = True,
) -> Iterator[ResultRecord]:
    """Yield the passing d in [lo, hi] in ascending order.

    Chunks are evaluated by ``workers`` threads and committed strictly in
    order, so output and journal are independent of the worker count.
    ``stop_after`` ends the scan after that many chunks (used to simulate an
    interruption).
    """
    if workers < 1:
        raise ConfigurationError(f"workers must be >= 1, got {workers}")
    if table is None:
        table = shared_table(job.sieve_limit(), env_int("QS_SIEVE_LIMIT"))
    elif table.limit < job.sieve_limit():
        raise ConfigurationError(f"sieve limit {table.limit} below required {job.sieve_limit()}")
    chunks = job.chunks()
    if stop_after is not None:
        chunks = chunks[:stop_after]
    journal = _Journal(job.journal_path, job, _fresh_journal) if job.journal_path else None
    try:
        if workers == 1:
            results = (scan_chunk(job, a, b, table) for a, b in chunks)
            for (a, b), recs in zip(chunks, results):
                if journal:
                    journal.commit(a, b, recs)
                yield from recs
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(scan_chunk, job, a, b, table) for a, b in chunks]
                try:
                    for (a, b), fut in zip(chunks, futures):
                        recs = fut.result()
                        if journal:
                            journal.commit(a, b, recs)
                        yield from recs
                finally:
                    for fut in futures:
                        fut.cancel()
    finally:
        if journal:
            journal.close()


# -- resume ------------------------------------------------------------------------


@dataclass
class ResumeState:
    job: ScanJob  # the original job
    continuation: ScanJob | None  # None when every chunk is done
    records: list[ResultRecord]
    completed_chunks: list[tuple[int, int]]
    valid_bytes: int
    discarded_lines: int = 0

    @property
    def next_lo(self) -> int | None:
        return None if self.continuation is None else self.continuation.lo


def read_journal(journal_path: str | os.PathLike) -> ResumeState:
    path = Path(journal_path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise JournalError(f"cannot read journal {path}: {exc}") from exc
    lines = raw.split(b"\n")
    # every complete line ends with a newline; the last piece is torn or empty
    complete, tail = lines[:-1], lines[-1]
    if not complete:
        raise JournalError(f"journal {path} has no complete header line")
    try:
        header = json.loads(complete[0])
        if header.get("journal") != JOURNAL_TAG or header.get("version") != JOURNAL_VERSION:
            raise ValueError("not a scan journal of a supported version")
        job = ScanJob.from_dict(header["job"], str(path))
    except (ValueError, KeyError, TypeError) as exc:
        raise JournalError(f"unrecoverable journal header in {path}: {exc}") from exc

    offset = len(complete[0]) + 1
    valid = offset
    done: list[ResultRecord] = []
    pending: list[ResultRecord] = []
    chunks: list[tuple[int, int]] = []
    expected = job.chunks()
    discarded = 1 if tail else 0
    for i, line in enumerate(complete[1:], start=1):
        offset += len(line) + 1
        try:
            obj = json.loads(line)
        except ValueError:
            if i == len(complete) - 1:
                discarded += 1
                break
            raise JournalError(f"corrupt line {i + 1} in journal {path}") from None
        if "chunk" in obj:
            lo, hi = obj["chunk"]
            k = len(chunks)
            if k >= len(expected) or expected[k] != (lo, hi) or obj.get("count") != len(pending):
                raise JournalError(f"chunk marker {obj} on line {i + 1} does not match the job")
            chunks.append((lo, hi))
            done.extend(pending)
            pending = []
            valid = offset
        else:
            pending.append(ResultRecord.from_json(obj))
    discarded += len(pending)
    cont = None
    if len(chunks) < len(expected):
        cont = replace(job, lo=expected[len(chunks)][0])
    return ResumeState(job, cont, done, chunks, valid, discarded)


def resume(journal_path: str | os.PathLike) -> ResumeState:
    """Parse a journal and return where to pick the scan up again."""
    return read_journal(journal_path)


def resume_scan(
    journal_path: str | os.PathLike,
    workers: int = 1,
    table: SpfTable | None = None,
    stop_after: int | None = None,
) -> Iterator[ResultRecord]:
    """Replay the finished part of a journal, then scan the rest, appending to it."""
    state = read_journal(journal_path)
    yield from state.records
    if state.continuation is None:
        return
    try:
        with open(journal_path, "r+b") as fh:
            fh.truncate(state.valid_bytes)
    except OSError as exc:
        raise JournalError(f"cannot truncate journal {journal_path}: {exc}") from exc
    yield from scan(state.continuation, workers, table, stop_after, _fresh_journal=False)


def run(job: ScanJob, workers: int = 1, table: SpfTable | None = None) -> list[ResultRecord]:
    return list(scan(job, workers, table))
