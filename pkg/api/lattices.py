from flask import Blueprint, current_app, jsonify, request
from werkzeug.exceptions import BadRequest

from ideallab import report as reports, schema
from ideallab.constructors import lattice_from_document, zn_ideal_lattice
from ideallab.core import validate as validate_lattice
from ideallab.errors import LatticeInputError
from ideallab.lemmas import lemma_suite
from ideallab.report import RunReport
from ideallab.verify import find_delta, verify_theorem

api = Blueprint('lattices', __name__)


@api.route('/lattice/validate', methods=['POST'])
def validate():
    lattice = load(request, check=False)
    result = validate_lattice(lattice,
                              samples=current_app.config['SPOT_CHECK_SAMPLES'],
                              seed=current_app.config['SPOT_CHECK_SEED'])

    return respond(reports.validation_entries(result))


@api.route('/lattice/classify', methods=['POST'])
def classify():
    return respond(reports.profile_entries(load(request)))


@api.route('/lattice/theorem', methods=['POST'])
def theorem():
    lattice = load(request)
    budget = current_app.config['DELTA_BUDGET']

    return respond(reports.theorem_entries(lattice,
                                           verify_theorem(lattice, budget)))


@api.route('/lattice/lemmas', methods=['POST'])
def lemmas():
    lattice = load(request)
    outcome = find_delta(lattice, current_app.config['DELTA_BUDGET'])

    return respond(reports.lemma_entries(lemma_suite(lattice,
                                                     outcome.certificate)))


@api.route('/zn/<int:n>/theorem', methods=['POST'])
def zn_theorem(n):
    limit = current_app.config['ZN_LIMIT']
    if not 1 <= n <= limit:
        raise LatticeInputError(f'n must lie between 1 and {limit}.')

    lattice = zn_ideal_lattice(n)
    budget = current_app.config['DELTA_BUDGET']

    return respond(reports.theorem_entries(lattice,
                                           verify_theorem(lattice, budget)))


def load(request_, check=True):
    """Reads a lattice interchange document from the request body."""

    body = json(request_, schema.lattice)

    limit = current_app.config['MAX_LATTICE_SIZE']
    if len(body['elements']) > limit:
        raise LatticeInputError(f'Lattices are limited to {limit} elements.')

    return lattice_from_document(
        body,
        check=check,
        samples=current_app.config['SPOT_CHECK_SAMPLES'],
        seed=current_app.config['SPOT_CHECK_SEED'],
    )


def respond(entries):
    report = RunReport(command=[request.path])
    report.extend(entries)

    return jsonify({'data': report.payload()})


def json(request_, schema_):
    """Parses the body of a request as JSON according to a provided schema."""

    body = request_.get_json(force=True, silent=True, cache=False)
    error = schema_.validate(body) or None

    if error is not None:
        raise BadRequest('Invalid JSON format.')

    return body
