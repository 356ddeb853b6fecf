import io
import json

from sumsetlab.experiments import ExperimentSpec, popularity_study, run_collision_study, run_distribution
from sumsetlab import formats
from sumsetlab.ranges import exhaustive_range


def test_distribution_csv_round_trip_exhaustive():
    dist = run_distribution(ExperimentSpec(4, 4, 30))
    text = formats.distribution_csv(dist)
    assert text.splitlines()[0].startswith("# h=4 k=4 q=30 mode=exhaustive")
    assert text.splitlines()[2] == "t,count"
    assert formats.read_distribution_csv(io.StringIO(text)) == dist


def test_distribution_csv_round_trip_sampled():
    dist = run_distribution(ExperimentSpec(5, 4, 1000, "sampled", 5000, seed=0xABC))
    text = formats.distribution_csv(dist)
    back = formats.read_distribution_csv(io.StringIO(text))
    assert back == dist
    assert back.spec.seed == 0xABC


def test_distribution_csv_lists_every_size():
    dist = run_distribution(ExperimentSpec(5, 4, 20))
    body = [l for l in formats.distribution_csv(dist).splitlines() if not l.startswith("#")]
    assert len(body) == 1 + 41
    assert sorted(int(l.split(",")[0]) for l in body[1:]) == list(range(16, 57))


def test_distribution_json_mirrors_csv():
    dist = run_distribution(ExperimentSpec(3, 3, 12))
    data = json.loads(formats.distribution_json(dist))
    assert data["spec"]["h"] == 3 and data["total"] == dist.total
    assert [(r["t"], r["count"]) for r in data["counts"]] == dist.table()


def test_range_csv():
    text = formats.range_csv(exhaustive_range(3, 3, 20))
    lines = text.splitlines()
    assert "proof_grade=false" in lines[0]
    assert lines[1:] == ["size,achieved", "7,1", "8,0", "9,1", "10,1"]
    data = json.loads(formats.range_json(exhaustive_range(3, 3, 20)))
    assert data["achieved"] == [7, 9, 10] and data["missing"] == [8]


def test_popular_csv():
    rows = popularity_study([2, 3], q=1000, n_samples=20000)
    text = formats.popular_csv(rows, 4, 1000, 20000, 0xC0FFEE)
    body = text.splitlines()[1:]
    assert body[0] == "h,rank,size,count,predicted,match"
    assert len(body) == 1 + 2 + 3
    assert body[1].startswith("2,1,10,") and body[1].endswith(",10,MATCH")
    data = json.loads(formats.popular_json(rows, 4, 1000, 20000, 0xC0FFEE))
    assert [r["size"] for r in data["rows"] if r["h"] == 3] == [20, 19, 16]


def test_collisions_csv():
    spec = ExperimentSpec(2, 7, 7)
    report = run_collision_study(spec)
    text = formats.collisions_csv(report, [(0, 1, 2, 3, 4, 5, 6)])
    assert text.splitlines()[-1] == "0,0 1 2 3 4 5 6,4,5"
    data = json.loads(formats.collisions_json(report, [(0, 1, 2, 3, 4, 5, 6)]))
    assert data["aggregate"] == {"ge3_less": 0, "ge3_equal": 0, "ge3_greater": 1}
