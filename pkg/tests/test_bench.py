from lrank.bench import SCHEMA, RunRecord, plan, read_csv, records_to_csv, run_bench


def strip_time(rows):
    return [{k: v for k, v in r.items() if k != "wall_time_s"} for r in rows]


def test_csv_schema_header():
    text = records_to_csv([])
    assert text.splitlines()[0] == f"# {SCHEMA}"
    assert text.splitlines()[1].split(",") == RunRecord.columns()


def test_bench_deterministic_given_seed():
    tasks = plan("ttree", [40, 80], [0, 1], 2, 2)
    a = read_csv(records_to_csv(run_bench(tasks)))
    b = read_csv(records_to_csv(run_bench(list(reversed(tasks)), jobs=2)))
    assert strip_time(a) == strip_time(b)
    assert all(r["verdict"] == "ok" for r in a)


def test_bench_families():
    for fam in ("ttree", "interval", "path"):
        recs = run_bench(plan(fam, [30], [3], 2, 2))
        assert len(recs) == 1 and recs[0].verdict == "ok" and recs[0].colors >= 1
