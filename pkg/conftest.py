# pytest wiring for the nose-style suite: setup.cfg runs nose with
# ``attr=!slow``, so tests flagged ``.slow = True`` (the yield-based
# acceptance generator) are reported as skipped here instead of being
# collected. Run them with ``nosetests -a slow``.
import inspect

import pytest


def pytest_pycollect_makeitem(collector, name, obj):
    if (inspect.isfunction(obj) and collector.funcnamefilter(name)
            and getattr(obj, 'slow', False)):
        def skipped():
            pytest.skip('slow (nose attr=!slow); run with nosetests -a slow')
        return pytest.Function.from_parent(collector, name=name,
                                           callobj=skipped)
