"""Helper functions for testing. Importing this module puts src on the path
so the tests can import the packages the same way main.py does."""
import os
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
SRC = os.path.join(ROOT, 'src')
FIXTURES = os.path.join(ROOT, 'fixtures')

if SRC not in sys.path:
    sys.path.insert(0, SRC)

from diagrams import helper as diagram_helper  # noqa: E402
from grammars import helper as grammar_helper  # noqa: E402
from senses import helper as sense_helper  # noqa: E402
from sites import workspace as site_workspace  # noqa: E402


def fixture(*parts) -> str:
    """The absolute path of a file under fixtures/"""
    return os.path.join(FIXTURES, *parts)


def diagram(name: str):
    return diagram_helper.load_diagram(fixture('diagrams', f'{name}.json'))


def grammar(name: str = 'g_alt'):
    return grammar_helper.load_grammar(fixture('grammars', f'{name}.json'))


def workspace(name: str, **kwargs):
    return site_workspace.load_workspace(fixture('workspaces', name), **kwargs)


def presheaf(name: str):
    return sense_helper.load_presheaf(fixture('presheaves', f'{name}.json'))


def subpresheaf(name: str):
    return sense_helper.load_subpresheaf(fixture('presheaves', f'{name}.json'))
