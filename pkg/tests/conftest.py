"""Collects acceptance-criterion outcomes and prints one line per criterion."""

import pytest

_CRITERIA: dict[int, dict] = {}


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker('criterion')
    if mark is None or call.when not in ('setup', 'call'):
        return
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, {'title': title, 'ok': True, 'ran': False, 'notes': []})
    if call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception):
        entry['ok'] = False
    if call.when == 'call':
        entry['ran'] = True
        entry['notes'].extend(v for k, v in item.user_properties if k == 'note')


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section('acceptance criteria')
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        status = 'PASS' if e['ok'] and e['ran'] else 'FAIL'
        line = f'criterion {n:2d} {status}  {e["title"]}'
        if e['notes']:
            line += '  [' + '; '.join(e['notes']) + ']'
        terminalreporter.write_line(line)
