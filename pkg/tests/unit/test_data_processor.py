import unittest
import tempfile
import json
import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "../..")))

from src.services.data_processor import DataProcessor
from src.services.verify import MinimizerRecord

class TestDataProcessor(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.processor = DataProcessor(export_dir=self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_write_json_is_canonical(self):
        path = self.processor.write_json("report.json", {"b": 1, "a": [1, 2]})
        with open(path) as f:
            text = f.read()
        self.assertTrue(text.endswith("\n"))
        self.assertLess(text.index('"a"'), text.index('"b"'))
        self.assertEqual(json.loads(text), {"a": [1, 2], "b": 1})

        # same payload, same bytes
        again = self.processor.write_json("again.json", {"a": [1, 2], "b": 1})
        with open(again) as f:
            self.assertEqual(f.read(), text)

    def test_write_frame(self):
        path = self.processor.write_frame("counts.csv", self.processor.count_table({5: 3, 4: 2}))
        self.assertEqual(path, os.path.join(self.tmp.name, "counts.csv"))
        with open(path) as f:
            lines = f.read().splitlines()
        self.assertEqual(lines, ["n,count", "4,2", "5,3"])

    def test_write_text_paths(self):
        bare = self.processor.write_text("note.txt", "x\n")
        self.assertEqual(os.path.dirname(bare), self.tmp.name)
        nested = os.path.join(self.tmp.name, "sub", "note.txt")
        self.assertEqual(self.processor.write_text(nested, "y\n"), nested)
        with open(nested) as f:
            self.assertEqual(f.read(), "y\n")

    def test_no_temporary_files_left(self):
        self.processor.write_json("x.json", {})
        self.assertEqual(sorted(os.listdir(self.tmp.name)), ["x.json"])

    def test_summarise_minimizers(self):
        records = [
            MinimizerRecord(n=5, min_abc=2.8284271247, minimizer_codes=["00010201"]),
            MinimizerRecord(n=6, min_abc=3.5355339059, minimizer_codes=["a", "b"]),
        ]
        df = self.processor.summarise_minimizers(records)
        self.assertEqual(list(df.columns), ["n", "min_abc", "num_minimizers"])
        self.assertEqual(df["num_minimizers"].tolist(), [1, 2])

    def test_count_table(self):
        df = self.processor.count_table({6: 6, 5: 3})
        self.assertEqual(df["n"].tolist(), [5, 6])
        self.assertEqual(df["count"].tolist(), [3, 6])

    def test_checkpoint_round_trip(self):
        directory = os.path.join(self.tmp.name, "ckpt")
        self.assertIsNone(self.processor.load_checkpoint(directory, "n10_job000of004"))
        self.processor.save_checkpoint(directory, "n10_job000of004", {"best": 1.5, "count": 7})
        self.assertEqual(self.processor.load_checkpoint(directory, "n10_job000of004"), {"best": 1.5, "count": 7})
        self.assertEqual(self.processor.list_checkpoints(directory), ["n10_job000of004"])

    def test_checkpoints_disabled(self):
        self.assertIsNone(self.processor.save_checkpoint(None, "x", {}))
        self.assertIsNone(self.processor.load_checkpoint(None, "x"))

if __name__ == "__main__":
    unittest.main()
