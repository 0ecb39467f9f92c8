from flask import Blueprint, current_app, request

from ideallab import report as reports, schema
from ideallab.natsemiring import (
    NatIdeal, bounded, nat_delta_witness_search, nat_refute_cancellation
)

from .lattices import json, respond

api = Blueprint('nat', __name__)


@api.route('/nat/refute', methods=['POST'])
def refute():
    body = json(request, schema.generators)
    ideal = NatIdeal.of(bounded(body['generators'],
                                current_app.config['NAT_GENERATOR_LIMIT']))

    return respond(reports.refutation_entries(
        ideal, nat_refute_cancellation(ideal)))


@api.route('/nat/delta', methods=['POST'])
def delta():
    body = json(request, schema.delta_pair)
    x, y = bounded((body['x'], body['y']),
                   current_app.config['NAT_DELTA_LIMIT'])

    return respond(reports.nat_delta_entries(
        x, y, nat_delta_witness_search(x, y)))
