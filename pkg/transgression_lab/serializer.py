# -*- coding: utf-8 -*-
"""
Report emission. A run report becomes an RDF graph (one report node, one
node per check with an explicit position), which is compacted into a JSON-LD
document with deterministic key and list order, or flattened into a table.

Example usage::

    >>> report = Report('blowup_models', 'Appendix A', {'seed': 7},
    ...                 [CheckRecord('psi', 'Appendix A', 0.0, 0.0, 1e-13,
    ...                              True)], 0.0, {})
    >>> doc = from_graph(report_graph(report))
    >>> doc['@id'], doc['check'][0]['name'], doc['check'][0]['passed']
    ('report:blowup_models', 'psi', True)

"""
from collections import namedtuple
import csv
import json
import warnings

from rdflib.graph import Graph
from rdflib.namespace import RDF, XSD
from rdflib.term import Literal, URIRef

from . import errors
from .context import Context, REPORT_CONTEXT, REPORT_IRI
from .keys import (CONTEXT, GRAPH, ANCHOR, CHECK, CHECKS, COMPUTED_IM,
                   COMPUTED_RE, CONFIG, ELAPSED, EXPECTED_IM, EXPECTED_RE,
                   NAME, PASSED, POSITION, REPORT, SCENARIO, TOLERANCE,
                   VERSION)
from .util import source_to_json

__all__ = ['CheckRecord', 'Report', 'report_graph', 'from_graph', 'dumps',
           'load_report', 'table_rows', 'write_table', 'TABLE_COLUMNS']


TABLE_COLUMNS = ('scenario', 'check', 'computed_re', 'computed_im',
                 'expected_re', 'expected_im', 'tol', 'pass')


CheckRecord = namedtuple('CheckRecord',
                         'name anchor computed expected tolerance passed')

Report = namedtuple('Report', 'scenario anchor config checks elapsed versions')


def _context(context):
    if isinstance(context, Context):
        return context
    return Context(context or REPORT_CONTEXT)


def _double(value):
    return Literal(float(value), datatype=XSD.double)


def _json_text(data):
    return json.dumps(data, sort_keys=True, separators=(',', ':'))


def report_graph(report, context=None):
    """The report as an RDF graph in the report vocabulary."""
    ctx = _context(context)

    def term(name):
        return URIRef(ctx.expand(name))

    graph = Graph()
    graph.bind('lab', ctx.vocab)
    node = URIRef(REPORT_IRI + report.scenario)
    graph.add((node, RDF.type, term(REPORT)))
    graph.add((node, term(SCENARIO), Literal(report.scenario)))
    graph.add((node, term(ANCHOR), Literal(report.anchor)))
    graph.add((node, term(CONFIG), Literal(_json_text(report.config))))
    graph.add((node, term(VERSION), Literal(_json_text(report.versions))))
    graph.add((node, term(ELAPSED), _double(report.elapsed)))

    for position, check in enumerate(report.checks, 1):
        cnode = URIRef('%s#check-%02d' % (node, position))
        computed = complex(check.computed)
        expected = complex(check.expected)
        graph.add((node, term(CHECKS), cnode))
        graph.add((cnode, RDF.type, term(CHECK)))
        graph.add((cnode, term(POSITION),
                   Literal(position, datatype=XSD.integer)))
        graph.add((cnode, term(NAME), Literal(check.name)))
        graph.add((cnode, term(ANCHOR), Literal(check.anchor)))
        graph.add((cnode, term(COMPUTED_RE), _double(computed.real)))
        graph.add((cnode, term(COMPUTED_IM), _double(computed.imag)))
        graph.add((cnode, term(EXPECTED_RE), _double(expected.real)))
        graph.add((cnode, term(EXPECTED_IM), _double(expected.imag)))
        graph.add((cnode, term(TOLERANCE), _double(check.tolerance)))
        graph.add((cnode, term(PASSED),
                   Literal(bool(check.passed), datatype=XSD.boolean)))
    return graph


def from_graph(graph, context=None):
    """Compact the reports in ``graph`` into one JSON-LD document."""
    ctx = _context(context)
    converter = Converter(ctx)
    reports = sorted(graph.subjects(RDF.type, URIRef(ctx.expand(REPORT))))
    if not reports:
        raise errors.ValidationError("graph holds no report")
    nodes = [converter.process_subject(graph, s) for s in reports]
    if len(nodes) == 1:
        result = nodes[0]
    else:
        result = {GRAPH: nodes}
    result[CONTEXT] = ctx.to_dict()
    return result


class Converter(object):

    def __init__(self, context):
        self.context = context
        self.position_key = context.to_symbol(context.expand(POSITION))

    def process_subject(self, graph, s):
        context = self.context
        node = {context.id_key: context.shrink_iri(s)}
        for p, o in sorted(graph.predicate_objects(s)):
            self.add_to_node(graph, p, o, node)
        for value in node.values():
            if isinstance(value, list) and value and \
                    isinstance(value[0], dict):
                value.sort(key=lambda n: n.get(self.position_key, 0))
        return node

    def add_to_node(self, graph, p, o, node):
        context = self.context
        if p == RDF.type:
            node[context.type_key] = context.to_symbol(o)
            return
        key = context.to_symbol(p)
        term = context.terms.get(key)
        if isinstance(o, URIRef):
            if graph.value(o, RDF.type) is not None:
                value = self.process_subject(graph, o)
            else:
                value = context.shrink_iri(o)
        else:
            value = o.toPython()
        if term is not None and term.container:
            node.setdefault(key, []).append(value)
        elif key in node:
            warnings.warn("repeated property %s on %s" % (key, node))
            existing = node[key]
            node[key] = (existing if isinstance(existing, list)
                         else [existing]) + [value]
        else:
            node[key] = value


def dumps(doc, indent=2):
    return json.dumps(doc, indent=indent, separators=(',', ': '),
                      sort_keys=True, ensure_ascii=False)


def load_report(source):
    """Parse a report document (dict, JSON text, stream or path)."""
    doc = source_to_json(source)
    if CONTEXT not in doc:
        raise errors.ValidationError("report document has no @context")
    return Graph().parse(data=json.dumps(doc), format='json-ld')


def table_rows(graph, context=None):
    """One tuple per check, in report then position order."""
    ctx = _context(context)

    def term(name):
        return URIRef(ctx.expand(name))

    def number(s, name):
        return graph.value(s, term(name)).toPython()

    rows = []
    for report in sorted(graph.subjects(RDF.type, term(REPORT))):
        scenario = str(graph.value(report, term(SCENARIO)))
        checks = sorted(graph.objects(report, term(CHECKS)),
                        key=lambda c: number(c, POSITION))
        for check in checks:
            rows.append((scenario, str(graph.value(check, term(NAME))),
                         number(check, COMPUTED_RE),
                         number(check, COMPUTED_IM),
                         number(check, EXPECTED_RE),
                         number(check, EXPECTED_IM),
                         number(check, TOLERANCE),
                         bool(number(check, PASSED))))
    return rows


def write_table(graph, stream, context=None):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(TABLE_COLUMNS)
    for row in table_rows(graph, context):
        writer.writerow(['%.17g' % v if isinstance(v, float) else v
                         for v in row])
