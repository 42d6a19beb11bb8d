"""
Report graphs, JSON-LD documents and tables
"""
import io
import json
import os
import tempfile

from nose.tools import raises
from rdflib import Graph
from rdflib.compare import isomorphic

from transgression_lab import errors
from transgression_lab.serializer import (CheckRecord, Report, TABLE_COLUMNS,
                                          dumps, from_graph, load_report,
                                          report_graph, table_rows,
                                          write_table)


def _report(scenario='maslov_spark'):
    checks = [CheckRecord('winding', '§8', 1 + 2j, 1, 0.5, False),
              CheckRecord('count', '§8', 3, 3, 0, True)]
    return Report(scenario, '§8', {'seed': 7, 'dims': {'n': 2}},
                  checks, 1.25, {'numpy': '1.0'})


def test_report_graph():
    graph = report_graph(_report())
    # six report properties and eleven per check
    assert len(graph) == 6 + 2 * 11


def test_compacted_document():
    doc = from_graph(report_graph(_report()))
    assert doc['@id'] == 'report:maslov_spark'
    assert doc['@type'] == 'Report'
    assert doc['scenario'] == 'maslov_spark'
    assert doc['elapsed'] == 1.25
    assert json.loads(doc['config']) == {'seed': 7, 'dims': {'n': 2}}
    first, second = doc['check']
    assert first['@id'] == 'report:maslov_spark#check-01'
    assert first['position'] == 1 and second['position'] == 2
    assert first['name'] == 'winding'
    assert (first['computedRe'], first['computedIm']) == (1.0, 2.0)
    assert first['passed'] is False and second['passed'] is True
    assert doc['@context']['tolerance']['@type'] == 'xsd:double'


def test_documents_are_deterministic():
    text = dumps(from_graph(report_graph(_report())))
    assert text == dumps(from_graph(report_graph(_report())))
    assert text.index('"@context"') < text.index('"@id"')


def test_several_reports_share_one_document():
    graph = report_graph(_report('top_chern')) + \
        report_graph(_report('gauss_bonnet'))
    doc = from_graph(graph)
    assert [node['@id'] for node in doc['@graph']] == \
        ['report:gauss_bonnet', 'report:top_chern']


@raises(errors.ValidationError)
def test_graph_without_reports():
    from_graph(Graph())


def test_reports_load_back():
    graph = report_graph(_report())
    text = dumps(from_graph(graph))
    assert isomorphic(load_report(text), graph)
    fd, path = tempfile.mkstemp(suffix='.jsonld')
    try:
        with io.open(fd, 'w', encoding='utf-8') as stream:
            stream.write(text)
        assert table_rows(load_report(path)) == table_rows(graph)
    finally:
        os.remove(path)


@raises(errors.ValidationError)
def test_reports_need_a_context():
    load_report({'@id': 'report:x'})


def test_table():
    graph = report_graph(_report())
    assert table_rows(graph) == [
        ('maslov_spark', 'winding', 1.0, 2.0, 1.0, 0.0, 0.5, False),
        ('maslov_spark', 'count', 3.0, 0.0, 3.0, 0.0, 0.0, True)]
    stream = io.StringIO()
    write_table(graph, stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == ','.join(TABLE_COLUMNS)
    assert lines[1] == 'maslov_spark,winding,1,2,1,0,0.5,False'
    assert lines[2] == 'maslov_spark,count,3,0,3,0,0,True'
