"""
Report context
"""
from nose.tools import raises
from rdflib.namespace import RDF, XSD

from transgression_lab import errors
from transgression_lab.context import (Context, REPORT_CONTEXT, UNDEF,
                                       VOCAB_IRI)


def test_create_context():
    ctx = Context()
    ctx.add_term('label', 'urn:x:label')
    term = ctx.terms.get('label')

    assert term.name == 'label'
    assert term.type is UNDEF
    assert ctx.find_term('urn:x:label') is term


def test_select_term_based_on_value_characteristics():
    ctx = Context()

    ctx.add_term('updated', 'urn:x:updated')
    ctx.add_term('updatedDate', 'urn:x:updated', coercion=str(XSD.date))

    assert ctx.find_term('urn:x:updated').name == 'updated'
    assert ctx.find_term('urn:x:updated',
                         coercion=str(XSD.date)).name == 'updatedDate'


def test_parsing_a_context_expands_prefixes():
    ctx = Context({
        '@vocab': 'urn:x:',
        'x': 'urn:x:',
        'label': 'x:label',
        'when': {'@id': 'x:when', '@type': 'x:date'}})

    assert ctx.terms.get('label').id == 'urn:x:label'
    term = ctx.terms.get('when')
    assert term.id == 'urn:x:when'
    assert term.type == 'urn:x:date'

    assert ctx.expand('term') == 'urn:x:term'
    assert ctx.expand('x:term') == 'urn:x:term'
    assert ctx.expand('term', use_vocab=False) is None

    assert ctx.shrink_iri('urn:x:term') == 'x:term'
    assert ctx.to_symbol('urn:x:term') == 'term'
    assert ctx.to_symbol(RDF.type) == '@type'


def test_accessing_keywords_by_alias():
    ctx = Context({'iri': '@id'})
    assert ctx.id_key == 'iri'
    assert ctx.type_key == '@type'


def test_report_context():
    ctx = Context({'@context': REPORT_CONTEXT})
    assert ctx.vocab == VOCAB_IRI
    checks = ctx.terms['check']
    assert checks.type == '@id' and checks.container == '@set'
    assert ctx.terms['tolerance'].type == str(XSD.double)
    assert ctx.terms['passed'].type == str(XSD.boolean)
    assert ctx.to_symbol(VOCAB_IRI + 'computedRe') == 'computedRe'


def test_compact_form_round_trips():
    ctx = Context(REPORT_CONTEXT)
    compact = ctx.to_dict()
    assert compact['tolerance']['@type'] == 'xsd:double'
    assert compact['check']['@container'] == '@set'
    again = Context(compact)
    for name, term in ctx.terms.items():
        assert again.terms[name] == term, name


@raises(errors.ValidationError)
def test_contexts_are_objects():
    Context('["urn:x:"]')
