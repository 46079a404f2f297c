"""The command-line front end on a jet document written to a temporary file."""

import json
import tempfile
from pathlib import Path

from harmjet.cli import main

doc = {
    "m": 5,
    "terms": [
        {"i": 6, "j": 0, "c": "1/1"},
        {"i": 4, "j": 2, "c": "3/1"},
        {"i": 2, "j": 4, "c": "3/1"},
        {"i": 0, "j": 6, "c": "1/1"},
    ],
}
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "witness.json"
    path.write_text(json.dumps(doc))
    print("$ harmjet obstruct --input witness.json")
    print("exit code", main(["obstruct", "--input", str(path)]))

print("\n$ harmjet theta --m 5 --k 1")
main(["theta", "--m", "5", "--k", "1"])
print("\n$ harmjet codim --m 6")
main(["codim", "--m", "6"])
