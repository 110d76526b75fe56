"""
<Program Name>
    serializer.py

<Started>
    March, 2024

<Copyright>
    See LICENSE for licensing information.

<Purpose>
   Methods to write benchmark results, multi-run statistics and spanners to
   files, and to read them back, e.g. for reports or verification.

   Run records are written as CSV with the fixed column order of
   `RECORD_COLUMNS` or as a JSON list of objects with the same keys (plus the
   failure reason). CSV files read with `read_rows_csv` are written back
   byte-identically by `write_rows_csv`.

   Spanner files list one edge per line:
   ```
   # alpha <alpha>
   <u> <v>
   ...
   ```

"""
import csv
import io
import json
import logging

from django.core.serializers.json import DjangoJSONEncoder

from spanners.exceptions import GraphError, ResultFormatError
from spanners.graph import Spanner

logger = logging.getLogger(__name__)

RECORD_COLUMNS = ("instance", "algorithm", "alpha", "weighted", "seed",
        "outcome", "wall_ms", "size", "sparseness", "lightness",
        "mean_degree", "stretch_mean", "stretch_max", "hop_mean_diff",
        "attempts")

STATS_COLUMNS = ("instance", "algorithm", "alpha", "iterations", "failures",
        "min", "mean", "std", "skewness", "kurtosis", "m1_count", "m2_count",
        "best_seed")

SAMPLE_COLUMNS = ("instance", "algorithm", "alpha", "seed", "size")



def _writer(stream):
    return csv.writer(stream, lineterminator="\n")



def write_rows_csv(rows, stream, columns=RECORD_COLUMNS):
    """Write dict rows with string values. Returns the number of rows. """
    writer = _writer(stream)
    writer.writerow(columns)
    count = 0
    for row in rows:
        writer.writerow([row.get(column, "") for column in columns])
        count += 1
    return count



def write_records_csv(records, stream, no_timing=False):
    """
    <Purpose>
        Write `bench.RunRecord`s as CSV, one line per record below the
        header. Records may be a generator, each one is written as soon as
        it is produced.

    <Arguments>
        records:
                Iterable of `RunRecord`s.

        stream:
                Text stream, e.g. an opened file.

        no_timing:
                Leave the wall time column empty, which makes the output
                deterministic for fixed seeds.

    <Returns>
        The list of written records.

    """
    writer = _writer(stream)
    writer.writerow(RECORD_COLUMNS)
    written = []
    for record in records:
        row = record.to_row(no_timing)
        writer.writerow([row[column] for column in RECORD_COLUMNS])
        stream.flush()
        written.append(record)
    return written



def records_to_json(records, no_timing=False):
    rows = []
    for record in records:
        row = record.to_row(no_timing)
        row["reason"] = record.reason
        rows.append(row)
    return json.dumps(rows, cls=DjangoJSONEncoder, indent=2)



def read_rows_csv(stream, columns=RECORD_COLUMNS):
    """Read CSV rows as dicts of strings. Raises ResultFormatError if the
    header does not match `columns`. """
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise ResultFormatError("Results file is empty")
    if tuple(header) != tuple(columns):
        raise ResultFormatError("Unexpected columns {}".format(
                ",".join(header)))

    rows = []
    for number, values in enumerate(reader, start=2):
        if len(values) != len(columns):
            raise ResultFormatError("Line {} has {} values, expected {}"
                    .format(number, len(values), len(columns)))
        rows.append(dict(zip(columns, values)))
    return rows



def stats_to_row(stats):
    row = stats.as_dict()
    for key, value in row.items():
        if isinstance(value, float):
            row[key] = "{:.6f}".format(value)
        else:
            row[key] = "" if value is None else str(value)
    return row



def write_stats_csv(stats_list, stream):
    return write_rows_csv([stats_to_row(s) for s in stats_list], stream,
            STATS_COLUMNS)



def write_samples_csv(stats_list, stream):
    """One line per valid sample of every `MultiRunStats`. """
    rows = []
    for stats in stats_list:
        for seed, size in zip(stats.sample_seeds, stats.samples):
            rows.append({
                "instance": stats.instance,
                "algorithm": stats.algorithm,
                "alpha": "{:g}".format(stats.alpha),
                "seed": str(seed),
                "size": str(int(size)),
            })
    return write_rows_csv(rows, stream, SAMPLE_COLUMNS)



def stats_to_json(stats_list):
    rows = []
    for stats in stats_list:
        row = stats.as_dict()
        row["samples"] = [int(size) for size in stats.samples]
        row["sample_seeds"] = stats.sample_seeds
        rows.append(row)
    return json.dumps(rows, cls=DjangoJSONEncoder, indent=2)



def format_spanner(spanner):
    lines = ["# alpha {:g}".format(spanner.alpha)]
    lines.extend("{} {}".format(u, v) for u, v in spanner.edges())
    return "\n".join(lines) + "\n"



def write_spanner(spanner, path):
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        file.write(format_spanner(spanner))



def parse_spanner(graph, data, alpha=None):
    """
    <Purpose>
        Read a spanner file of `graph`.

    <Arguments>
        graph:
                The parent `graph.Graph`.

        data:
                File contents.

        alpha: (optional)
                Overrides the stretch stated in the file.

    <Exceptions>
        ResultFormatError if the file has no stretch and none is passed, or
        holds unreadable lines.
        GraphError if an edge is not part of `graph`.

    <Returns>
        A `graph.Spanner`.

    """
    indices = []
    stated = None
    for line in io.StringIO(data):
        tokens = line.split()
        if not tokens:
            continue
        if tokens[0] == "#":
            if len(tokens) == 3 and tokens[1] == "alpha":
                stated = float(tokens[2])
            continue
        if len(tokens) != 2:
            raise ResultFormatError("Invalid spanner line '{}'".format(
                    line.strip()))
        u, v = int(tokens[0]), int(tokens[1])
        idx = graph.edge_index(u, v)
        if idx is None:
            raise GraphError("Spanner edge {}-{} is not in the graph".format(
                    u, v))
        indices.append(idx)

    alpha = alpha if alpha is not None else stated
    if alpha is None:
        raise ResultFormatError("Spanner file does not state its stretch")
    return Spanner.from_edge_indices(graph, indices, alpha)



def read_spanner(graph, path, alpha=None):
    with open(path, encoding="utf-8") as file:
        return parse_spanner(graph, file.read(), alpha)
