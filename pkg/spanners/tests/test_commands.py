import io
import json
import os
import shutil
import tempfile

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from spanners import choices, instances, serializer
from spanners.greedy import GreedyConfig, addjs
from spanners.tests import graphs


class CommandTestCase(SimpleTestCase):

    def setUp(self):
        self.directory = tempfile.mkdtemp()
        self.k6 = self.path("k6.graph")
        instances.write_native(graphs.complete(6), self.k6)
        self.weighted = self.path("weighted.graph")
        instances.write_native(graphs.random_graph(10, 0.5, 4, weighted=True),
                self.weighted)

    def tearDown(self):
        shutil.rmtree(self.directory)

    def path(self, name):
        return os.path.join(self.directory, name)

    def call(self, *args, **options):
        out = io.StringIO()
        call_command(*args, stdout=out, **options)
        return out.getvalue()



class GenTest(CommandTestCase):

    def test_gen(self):
        corpus = self.path("corpus.json")
        with open(corpus, "w") as file:
            json.dump({"name": "t", "seed": 1, "groups": [
                {"n": [8, 10], "densities": [0.2, 0.6], "weighted": False}]},
                file)

        out = self.path("instances")
        output = self.call("gen", corpus, out=out)
        self.assertIn("Wrote 4 instances", output)
        self.assertEqual(sorted(os.listdir(out)), [
            "t-n10-d0.2-0.graph", "t-n10-d0.6-0.graph",
            "t-n8-d0.2-0.graph", "t-n8-d0.6-0.graph"])
        g = instances.read_native(os.path.join(out, "t-n10-d0.6-0.graph"))
        self.assertEqual(g.m, 27)
        self.assertFalse(g.weighted)

    def test_missing_corpus(self):
        with self.assertRaises(CommandError):
            self.call("gen", self.path("missing.json"), out=self.path("x"))

    def test_infeasible_corpus(self):
        corpus = self.path("corpus.json")
        with open(corpus, "w") as file:
            json.dump({"groups": [{"n": [5], "densities": [1.5]}]}, file)
        with self.assertRaises(CommandError):
            self.call("gen", corpus, out=self.path("x"))



class RunTest(CommandTestCase):

    def test_run_and_verify(self):
        spanner_path = self.path("k6.spanner")
        output = self.call("run", self.k6, algorithm="KP", alpha=2,
                spanner_out=spanner_path)
        lines = output.splitlines()
        self.assertEqual(lines[0], ",".join(serializer.RECORD_COLUMNS))
        self.assertTrue(lines[1].startswith("k6,KP,2,false,0,solved,"))

        output = self.call("verify", self.k6, spanner_path)
        self.assertTrue(output.startswith("Valid spanner: 5 edges, alpha 2,"))

    def test_json(self):
        output = self.call("run", self.weighted, algorithm="ADDJS", alpha=3,
                format="json")
        rows = json.loads(output)
        self.assertEqual(rows[0]["weighted"], "true")
        self.assertEqual(rows[0]["outcome"], "solved")

    def test_unweighted_flag(self):
        output = self.call("run", self.weighted, algorithm="EN", alpha=3,
                seed=1, epsilon=0.1, unweighted=True)
        self.assertIn(",false,1,", output.splitlines()[1])

    def test_incompatible(self):
        with self.assertRaises(CommandError):
            self.call("run", self.weighted, algorithm="EN", alpha=3)
        with self.assertRaises(CommandError):
            self.call("run", self.k6, algorithm="BS", alpha=4)

    def test_missing_instance(self):
        with self.assertRaises(CommandError):
            self.call("run", self.path("missing.graph"), algorithm="BS",
                    alpha=3)



class VerifyTest(CommandTestCase):

    def test_invalid_spanner(self):
        spanner_path = self.path("star.spanner")
        with open(spanner_path, "w") as file:
            file.write("# alpha 2\n0 1\n0 2\n0 3\n0 4\n0 5\n")
        self.call("verify", self.k6, spanner_path)
        with self.assertRaises(CommandError):
            self.call("verify", self.k6, spanner_path, alpha=1.5)

    def test_unknown_edge(self):
        spanner_path = self.path("bad.spanner")
        with open(spanner_path, "w") as file:
            file.write("# alpha 2\n0 9\n")
        with self.assertRaises(CommandError):
            self.call("verify", self.k6, spanner_path)



class BenchTest(CommandTestCase):

    def bench(self, out):
        return self.call("bench", self.k6, self.weighted, out=out,
                algorithms=["ADDJS", "BS", "KP"], stretches=[2, 3],
                seeds=2, workers=1, no_timing=True)

    def test_bench(self):
        out = self.path("results/bench.csv")
        output = self.bench(out)
        # ADDJS 3 views x 2 stretches, BS 3 views x 2 seeds, KP 2 views
        self.assertIn("Wrote 14 records", output)
        with open(out, encoding="utf-8") as file:
            rows = serializer.read_rows_csv(file)
        self.assertEqual(len(rows), 14)
        self.assertTrue(all(row["outcome"] == "solved" for row in rows))
        self.assertTrue(all(row["wall_ms"] == "" for row in rows))

    def test_repeated_runs_are_identical(self):
        first, second = self.path("a.csv"), self.path("b.csv")
        self.bench(first)
        self.bench(second)
        with open(first, "rb") as a, open(second, "rb") as b:
            self.assertEqual(a.read(), b.read())

    def test_json(self):
        out = self.path("bench.json")
        self.call("bench", self.k6, out=out, algorithms=["ADDJS"],
                stretches=[3], workers=1, format="json")
        with open(out, encoding="utf-8") as file:
            self.assertEqual(len(json.load(file)), 1)

    def test_order(self):
        g = graphs.random_graph(12, 0.5, 3)
        path = self.path("g.graph")
        instances.write_native(g, path)
        out = self.path("dfs.csv")
        self.call("bench", path, out=out, algorithms=["ADDJS"],
                stretches=[3], workers=1, order="dfs")
        with open(out, encoding="utf-8") as file:
            rows = serializer.read_rows_csv(file)
        expected = addjs(g, GreedyConfig(3, choices.ORDER_DFS)).size
        self.assertEqual(rows[0]["size"], str(expected))

    def test_no_instances(self):
        empty = self.path("empty")
        os.makedirs(empty)
        with self.assertRaises(CommandError):
            self.call("bench", empty, out=self.path("x.csv"))



class MultirunTest(CommandTestCase):

    def test_multirun(self):
        output = self.call("multirun", self.k6, algorithm="BS", alpha=3,
                iterations=5, out_dir=self.directory)
        self.assertIn("k6: min", output)

        with open(self.path("multirun-BS-3.csv"), encoding="utf-8") as file:
            rows = serializer.read_rows_csv(file, serializer.STATS_COLUMNS)
        self.assertEqual(rows[0]["iterations"], "5")
        with open(self.path("multirun-BS-3-samples.csv"),
                encoding="utf-8") as file:
            self.assertEqual(len(file.read().splitlines()), 6)

    def test_json(self):
        self.call("multirun", self.weighted, algorithm="EN", alpha=3,
                iterations=4, epsilon=0.1, out_dir=self.directory,
                format="json")
        with open(self.path("multirun-EN-3.json"), encoding="utf-8") as file:
            stats = json.load(file)
        self.assertEqual(stats[0]["instance"], "weighted")

    def test_all_runs_failed(self):
        p2 = self.path("p2.graph")
        instances.write_native(graphs.path(2), p2)
        with self.assertRaises(CommandError):
            self.call("multirun", p2, algorithm="EN", alpha=3,
                    iterations=2, epsilon=5.999, out_dir=self.directory)



class ReportTest(CommandTestCase):

    def test_report(self):
        out = self.path("bench.csv")
        self.call("bench", self.k6, self.weighted, out=out,
                algorithms=["ADDJS", "BS"], stretches=[3], workers=1)
        output = self.call("report", out, group_by=["algorithm"],
                fields=["size"])
        lines = output.splitlines()
        self.assertEqual(lines[0], "algorithm,weighted,runs,solved_pct,"
                "avg_time_s")
        self.assertTrue(lines[1].startswith("ADDJS,false,2,100.0,"))
        self.assertIn("algorithm,alpha,stretch_mean,stretch_mean_max,"
                "stretch_max", lines)
        self.assertIn("algorithm,count,size_mean,size_median,size_std", lines)
        self.assertEqual(lines[-2:], ["ADDJS,greedy (Althoefer et al.)",
                "BS,clustering (Baswana-Sen)"])

    def test_invalid_file(self):
        out = self.path("bad.csv")
        with open(out, "w") as file:
            file.write("a,b\n1,2\n")
        with self.assertRaises(CommandError):
            self.call("report", out)
