from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omegaquad.errors import ConfigurationError, JournalError
from omegaquad.kernel import DFilter
from omegaquad.scan import ResultRecord, ScanJob, read_journal, resume, resume_scan, run, scan

T11 = [1, 9, 25, 27, 49, 63, 135, 175, 207, 343]
ODD_COMPOSITE = DFilter(((2, (1,)),), ("composite-non-pq",))
NSF_2MOD4 = DFilter(((4, (2,)),), ("non-squarefree",))


def ds(records):
    return [r.d for r in records]


def test_scan_examples(table):
    assert ds(run(ScanJob(1, 1000, "m_odd", 2, ODD_COMPOSITE), table=table)) == T11
    assert ds(run(ScanJob(1, 10_000, "m_even_real", 2, NSF_2MOD4), table=table)) == [18, 50, 54, 90, 98]
    assert ds(run(ScanJob(4, 4, "m_odd", 2, ODD_COMPOSITE), table=table)) == []


def test_records(table):
    recs = run(ScanJob(1, 1000, "m_odd", 2, ODD_COMPOSITE), table=table)
    assert recs[0] == ResultRecord(1, 1, 1, True)
    assert recs[5] == ResultRecord(63, 2, 3, True)
    assert all(r.passed and r.max_omega <= 2 for r in recs)


def test_job_validation():
    with pytest.raises(ConfigurationError):
        ScanJob(10, 5, "m_odd", 2)
    with pytest.raises(ConfigurationError):
        ScanJob(0, 5, "m_odd", 2)
    with pytest.raises(ConfigurationError):
        ScanJob(1, 5, "m_odd", 2, chunk_size=0)
    with pytest.raises(ConfigurationError):
        ScanJob(1, 5, "m_odd", -1)
    with pytest.raises(ConfigurationError):
        run(ScanJob(1, 5, "m_odd", 2), workers=0)


def test_chunks_cover_range():
    job = ScanJob(3, 25, "m_odd", 2, chunk_size=10)
    assert job.chunks() == [(3, 12), (13, 22), (23, 25)]


def test_job_dict_round_trip():
    job = ScanJob(5, 999, "fr_real", 1, DFilter(((8, (5,)),), ("squarefree", "near-square"), 9), 77)
    again = ScanJob.from_dict(json.loads(json.dumps(job.to_dict())))
    assert again == job


@pytest.mark.parametrize("chunk", [1, 100, 10_000])
@pytest.mark.parametrize("workers", [1, 3])
def test_chunk_and_worker_independence(chunk, workers, table):
    if chunk == 1 and workers == 3:
        hi = 3000
    else:
        hi = 20_000
    base = run(ScanJob(1, hi, "m_odd", 2, DFilter(((4, (2,)),), ("squarefree",))), table=table)
    got = run(ScanJob(1, hi, "m_odd", 2, DFilter(((4, (2,)),), ("squarefree",)), chunk), workers, table)
    assert got == [r for r in base if r.d <= hi]


def _journal_job(tmp_path, name="j.jsonl", chunk=500):
    return ScanJob(1, 20_000, "m_odd", 2, DFilter(((4, (2,)),), ("squarefree",)), chunk, str(tmp_path / name))


def test_journal_layout_and_round_trip(tmp_path, table):
    job = _journal_job(tmp_path)
    recs = run(job, table=table)
    lines = (tmp_path / "j.jsonl").read_text().splitlines()
    header = json.loads(lines[0])
    assert header["journal"] == "omegaquad-scan" and header["version"] == 1
    markers = [json.loads(x) for x in lines if '"chunk"' in x]
    assert [tuple(m["chunk"]) for m in markers] == job.chunks()
    body = [ResultRecord.from_json(json.loads(x)) for x in lines[1:] if '"chunk"' not in x]
    assert body == recs
    state = resume(job.journal_path)
    assert state.records == recs and state.continuation is None and state.next_lo is None


def test_resume_finished_job_emits_nothing_new(tmp_path, table):
    job = _journal_job(tmp_path)
    recs = run(job, table=table)
    before = (tmp_path / "j.jsonl").read_bytes()
    assert list(resume_scan(job.journal_path, table=table)) == recs
    assert (tmp_path / "j.jsonl").read_bytes() == before


def test_resume_continues_after_first_chunks(tmp_path, table):
    job = _journal_job(tmp_path, chunk=5000)
    list(scan(job, table=table, stop_after=1))
    state = resume(job.journal_path)
    assert state.completed_chunks == [(1, 5000)]
    assert state.next_lo == 5001


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 40), st.integers(0, 400), st.booleans())
def test_kill_and_resume_equivalence(tmp_path_factory, stop_after, cut, extra_workers):
    from omegaquad.arith import build_spf

    table = build_spf(40_000)
    tmp = tmp_path_factory.mktemp("kr")
    expected = run(ScanJob(1, 20_000, "m_odd", 2, DFilter(((4, (2,)),), ("squarefree",)), 500), table=table)
    job = _journal_job(tmp)
    list(scan(job, table=table, stop_after=stop_after))
    path = tmp / "j.jsonl"
    raw = path.read_bytes()
    # chop bytes off the end, possibly mid-record or mid-marker
    if len(raw) - cut > raw.index(b"\n") + 1:
        path.write_bytes(raw[: len(raw) - cut])
    got = list(resume_scan(path, workers=2 if extra_workers else 1, table=table))
    assert got == expected
    # the journal now describes the whole job and replays to the same set
    assert resume(path).records == expected


def test_torn_final_record_is_rescanned(tmp_path, table):
    job = _journal_job(tmp_path)
    recs = run(job, table=table)
    path = tmp_path / "j.jsonl"
    lines = path.read_bytes().split(b"\n")
    # drop the last marker and tear the record before it
    keep = b"\n".join(lines[:-3]) + b"\n" + lines[-3][:7]
    path.write_bytes(keep)
    state = read_journal(path)
    assert state.discarded_lines >= 1
    assert state.continuation is not None
    assert list(resume_scan(path, table=table)) == recs


def test_corrupt_header(tmp_path):
    p = tmp_path / "bad.jsonl"
    p.write_text("not json\n")
    with pytest.raises(JournalError):
        resume(p)
    p.write_text('{"journal": "other", "version": 1}\n')
    with pytest.raises(JournalError):
        resume(p)
    p.write_text("")
    with pytest.raises(JournalError):
        resume(p)
    with pytest.raises(JournalError):
        resume(tmp_path / "missing.jsonl")


def test_corrupt_middle_line(tmp_path, table):
    job = _journal_job(tmp_path)
    run(job, table=table)
    path = tmp_path / "j.jsonl"
    lines = path.read_text().splitlines()
    lines[3] = "{garbage"
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(JournalError):
        resume(path)


def test_marker_from_another_job(tmp_path, table):
    job = _journal_job(tmp_path)
    run(job, table=table)
    path = tmp_path / "j.jsonl"
    text = path.read_text().replace('"chunk": [1, 500]', '"chunk": [1, 400]')
    path.write_text(text)
    with pytest.raises(JournalError):
        resume(path)


def test_unwritable_journal(tmp_path, table):
    job = ScanJob(1, 100, "m_odd", 2, journal_path=str(tmp_path / "no" / "such" / "dir.jsonl"))
    with pytest.raises(JournalError):
        run(job, table=table)


def test_sieve_too_small_for_job():
    from omegaquad.arith import build_spf

    with pytest.raises(ConfigurationError):
        run(ScanJob(1, 1000, "m_odd", 2), table=build_spf(1500))


def test_env_workers(monkeypatch):
    from omegaquad.scan import default_workers

    monkeypatch.setenv("QS_WORKERS", "3")
    assert default_workers() == 3
    monkeypatch.setenv("QS_WORKERS", "0")
    assert default_workers() >= 1
    monkeypatch.setenv("QS_WORKERS", "x")
    with pytest.raises(ConfigurationError):
        default_workers()
