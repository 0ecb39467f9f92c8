from flask import Blueprint, jsonify

from ideallab.report import SCHEMA, VERSION

api = Blueprint('health', __name__)


@api.route('/health', methods=['POST'])
def health():
    """Liveness plus the report version and schema this server speaks."""
    return jsonify({'data': {'status': 'ok',
                             'version': VERSION,
                             'schema': SCHEMA}})
