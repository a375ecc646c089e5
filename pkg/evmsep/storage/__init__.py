"""
State and EVM container files.

Both containers are JSON documents with ``dims`` and a row-major
``matrix`` of ``[re, im]`` pairs. State files may carry a family
``provenance`` header and an analysis ``report``; EVM files add the
``labels`` table of operator words.
"""

from evmsep.storage.reader import load_document, read_evm, read_state
from evmsep.storage.writer import dumps_evm, dumps_state, write_evm, write_state

__all__ = ["load_document", "read_state", "read_evm", "dumps_state", "dumps_evm", "write_state", "write_evm"]
