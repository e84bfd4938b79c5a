"""File formats: edge lists, event streams, partition JSON, logs, DOT."""

import os

import pytest

from noaga import (
    AttributeSchema,
    AttributeView,
    DuplicateEdge,
    Edge,
    GraphSnapshot,
    ParseError,
    Partition,
    UpdateEvent,
    datasets,
    fitness,
    io,
)
from noaga.analysis import find_noa, noa_records
from noaga.engine import Checkpoint

from conftest import EMAILS_TARGET


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_bundled_edge_list_matches_fixture(sample):
    snap, schema = io.parse_edge_list(str(datasets.bundled_path("table1.tsv")))
    assert schema.names == ("emails", "posts", "comments")
    assert snap.nodes == sample.nodes
    assert dict(snap.edges) == dict(sample.edges)


def test_bundled_event_stream_matches_fixture():
    events = io.parse_event_stream(str(datasets.bundled_path("table2_events.jsonl")))
    assert events == list(datasets.dynamics_events())
    assert [e.tick for e in events] == [2500] * 5 + [3500] * 8


def test_edge_list_round_trip(sample, tmp_path):
    path = str(tmp_path / "roundtrip.tsv")
    io.write_edge_list(sample, path)
    snap, schema = io.parse_edge_list(path)
    assert schema == sample.schema
    assert snap.nodes == sample.nodes
    assert dict(snap.edges) == dict(sample.edges)
    # equal input renders equal bytes
    assert io.edge_list_text(snap) == io.edge_list_text(sample)


def test_edge_list_rows_sorted_by_pair(sample):
    lines = io.edge_list_text(sample).splitlines()
    pairs = [tuple(map(int, ln.split("\t")[:2])) for ln in lines[1:]]
    assert pairs == sorted(pairs)


def test_parse_bare_edge_list(tmp_path):
    path = write(tmp_path, "bare.tsv", "1\t2\n2\t3\n\n# comment\n3\t1\n")
    snap, schema = io.parse_edge_list(path)
    assert schema.names == ("w1",)
    assert dict(snap.edges) == {(1, 2): (1,), (2, 3): (1,), (1, 3): (1,)}


def test_parse_skips_comments_and_blanks(tmp_path):
    text = "# leading\n\nnode_a\tnode_b\tw1\n# mid\n1\t2\t5\n\n"
    snap, _ = io.parse_edge_list(write(tmp_path, "c.tsv", text))
    assert dict(snap.edges) == {(1, 2): (5,)}


@pytest.mark.parametrize(
    "text, line",
    [
        ("node_a\tnode_b\n", 1),  # header without attributes
        ("first\tsecond\tw1\n", 1),  # wrong leading header fields
        ("node_a\tnode_b\tw1\tw1\n", 1),  # duplicate attribute
        ("node_a\tnode_b\tw1\n1\t2\n", 2),  # short row
        ("node_a\tnode_b\tw1\n1\t2\t-3\n", 2),  # negative weight
        ("node_a\tnode_b\tw1\n1\tx\t3\n", 2),  # non-integer id
        ("node_a\tnode_b\tw1\n4\t4\t3\n", 2),  # self-loop
        ("node_a\tnode_b\tw1\n1\t2\t0\n", 2),  # all-zero weights
        ("1\t2\n3\t4\t5\n", 2),  # bare rows must have 2 columns
        ("", 1),  # empty file
    ],
)
def test_parse_errors_carry_line_numbers(tmp_path, text, line):
    path = write(tmp_path, "bad.tsv", text)
    with pytest.raises(ParseError) as info:
        io.parse_edge_list(path)
    assert info.value.line == line


def test_parse_duplicate_edge(tmp_path):
    path = write(tmp_path, "dup.tsv", "node_a\tnode_b\tw1\n1\t2\t3\n2\t1\t4\n")
    with pytest.raises(DuplicateEdge) as info:
        io.parse_edge_list(path)
    assert "line 3" in str(info.value)


def test_event_stream_round_trip(tmp_path):
    events = datasets.dynamics_events()
    path = str(tmp_path / "events.jsonl")
    io.write_event_stream(events, path)
    assert tuple(io.parse_event_stream(path)) == events


def test_event_stream_skips_comments(tmp_path):
    text = '# note\n\n{"tick": 1, "kind": "add_node", "node": "X"}\n'
    events = io.parse_event_stream(write(tmp_path, "e.jsonl", text))
    assert events == [UpdateEvent.add_node(1, "X")]


@pytest.mark.parametrize(
    "text, line",
    [
        ("{not json}\n", 1),
        ('["tick"]\n', 1),
        ('{"tick": 1, "kind": "explode"}\n', 1),
        ('{"kind": "add_node", "node": 3}\n', 1),
        ('{"tick": -1, "kind": "add_node", "node": 3}\n', 1),
        ('{"tick": 1, "kind": "add_edge", "a": 1, "b": 2}\n', 1),
        ('{"tick": 1, "kind": "add_edge", "a": 1, "b": 2, "weights": [1, -2]}\n', 1),
        ('{"tick": 1, "kind": "update_weight", "a": 1, "b": 2, "attr": 5, "value": 1}\n', 1),
        ('{"tick": 1, "kind": "update_weight", "a": 1, "b": 2, "attr": "w1", "value": true}\n', 1),
        ('{"tick": 1, "kind": "add_node", "node": null}\n', 1),
        (
            '{"tick": 5, "kind": "add_node", "node": 1}\n'
            '{"tick": 4, "kind": "add_node", "node": 2}\n',
            2,
        ),
    ],
)
def test_event_stream_errors_carry_line_numbers(tmp_path, text, line):
    path = write(tmp_path, "bad.jsonl", text)
    with pytest.raises(ParseError) as info:
        io.parse_event_stream(path)
    assert info.value.line == line


def test_partition_json_round_trip(emails, tmp_path):
    part = Partition(EMAILS_TARGET, ("emails",), 0)
    value = fitness(part, emails)
    noas = [find_noa(c, emails) for c in part.clusters]
    meta = {"tool": io.TOOL, "seed": 3}
    path = str(tmp_path / "part.json")
    io.write_partition_json(part, emails, value, noas, meta, path)
    got_meta, got = io.read_partition_json(path)
    assert got_meta == meta
    assert got == part
    text = (tmp_path / "part.json").read_text()
    assert '"noa": 6' in text
    assert f'"total": {value.total!r}' in text


def test_read_partition_json_errors(tmp_path):
    with pytest.raises(ParseError):
        io.read_partition_json(write(tmp_path, "x.json", "not json"))
    with pytest.raises(ParseError):
        io.read_partition_json(write(tmp_path, "y.json", '{"clusters": [{"m": 1}]}'))


def test_checkpoint_log_format(tmp_path):
    cps = [
        Checkpoint(100, 300, 0, 0.5, 3, (5, 4, 6)),
        Checkpoint(200, 500, 1, 0.75, 3, (5, 4, 6)),
    ]
    path = str(tmp_path / "ck.jsonl")
    io.write_checkpoint_log(cps, {"seed": 1}, path)
    lines = (tmp_path / "ck.jsonl").read_text().splitlines()
    assert lines[0] == '{"header": {"seed": 1}}'
    assert len(lines) == 3
    import json

    rec = json.loads(lines[1])
    assert rec == {
        "iteration": 100,
        "evaluations": 300,
        "snapshot_version": 0,
        "best_total": 0.5,
        "cluster_count": 3,
        "cluster_sizes": [5, 4, 6],
    }


def test_noa_log_round_trip(emails, tmp_path):
    part = Partition(EMAILS_TARGET, ("emails",), 0)
    records = noa_records(part, emails, tick=100)
    path = str(tmp_path / "noa.jsonl")
    io.write_noa_log(records, {"seed": 9}, path)
    meta, got = io.read_noa_log(path)
    assert meta == {"seed": 9}
    assert tuple(got) == records
    lines = (tmp_path / "noa.jsonl").read_text().splitlines()
    assert '"edges": 6' in lines[2] and '"weight": 23' in lines[2]


def test_dot_output_golden():
    schema = AttributeSchema(("w1",))
    snap = GraphSnapshot.build(schema, [Edge(1, 2, (3,)), Edge(2, 3, (1,))])
    snap = snap.apply(UpdateEvent.add_node(50, "X"))  # gets id 4
    view = AttributeView(snap)
    part = Partition(((1, 2), (3,), (4,)), ("w1",), 1)
    text = io.dot_text(
        part, view, noa_nodes=[1], new_since=0, meta_comment="demo"
    )
    assert text == (
        "// demo\n"
        "graph clusters {\n"
        "  node [shape=circle];\n"
        "  subgraph cluster_0 {\n"
        '    label="cluster 0";\n'
        '    "1" [color=red];\n'
        '    "2";\n'
        "  }\n"
        "  subgraph cluster_1 {\n"
        '    label="cluster 1";\n'
        '    "3";\n'
        "  }\n"
        "  subgraph cluster_2 {\n"
        '    label="cluster 2";\n'
        '    "X" [color=blue];\n'
        "  }\n"
        '  "1" -- "2" [label=3];\n'
        '  "2" -- "3" [label=1];\n'
        "}\n"
    )


def test_dot_red_beats_blue():
    schema = AttributeSchema(("w1",))
    snap = GraphSnapshot.build(schema, [Edge(1, 2, (3,))])
    snap = snap.apply(UpdateEvent.add_node(9, "Y"))  # gets id 3
    view = AttributeView(snap)
    part = Partition(((1, 2), (3,)), ("w1",), 1)
    text = io.dot_text(part, view, noa_nodes=[3], new_since=0)
    assert '"Y" [color=red];' in text
    assert "blue" not in text


def test_atomic_write_leaves_no_temp_files(tmp_path):
    path = tmp_path / "out.txt"
    io.atomic_write_text(str(path), "payload\n")
    assert path.read_text() == "payload\n"
    io.atomic_write_text(str(path), "replaced\n")
    assert path.read_text() == "replaced\n"
    leftovers = [n for n in os.listdir(tmp_path) if n.startswith(".tmp-")]
    assert leftovers == []


def test_sha256_of(tmp_path):
    path = write(tmp_path, "h.txt", "abc")
    assert io.sha256_of(path) == (
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
    )
