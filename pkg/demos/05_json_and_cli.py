"""
Files and the command line
==========================

Structures are exchanged as sparse JSON documents. The same checks are
available from the ``hopfbrauer`` command.
"""

import json
import tempfile
from pathlib import Path

from hopfbrauer import io
from hopfbrauer.cli import main
from hopfbrauer.exact import FieldSpec
from hopfbrauer.families import HndParams, c_object

F13 = FieldSpec.prime(13, 6)
params = HndParams(2, 3, (3, 3), 3)
doc = io.dump(c_object(2, (1,), params, F13))
print(sorted(doc), len(doc["mult"]))

with tempfile.TemporaryDirectory() as tmp:
    s = str(Path(tmp) / "S.json")
    io.write_json(s, doc)
    t = str(Path(tmp) / "T.json")
    main(["family", "--n", "2", "--m", "3", "--d", "3,3", "--s", "3", "--p", "13",
          "--object", "c", "--a", "7", "--alpha", "4", "--emit", t])
    main(["galois", "cotensor", s, t, "--emit", str(Path(tmp) / "C.json")])
    main(["galois", "invariant", str(Path(tmp) / "C.json")])
    # loading gives back the same document
    print(json.dumps(io.dump(io.Loader().load(io.read_json(s)))) == json.dumps(doc))
