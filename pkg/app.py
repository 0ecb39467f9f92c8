from http import HTTPStatus

from flask import Flask, jsonify

from api import health, lattices, nat
from ideallab.errors import InternalContradiction, LatticeError


app = Flask(__name__)
app.config.from_object('ideallab.config.Config')

app.register_blueprint(health.api)
app.register_blueprint(lattices.api)
app.register_blueprint(nat.api)


@app.errorhandler(LatticeError)
def handle_lattice(ex: LatticeError):
    code = HTTPStatus.BAD_REQUEST

    if isinstance(ex, InternalContradiction):
        app.logger.error('Internal contradiction: %s', ex)
        code = HTTPStatus.INTERNAL_SERVER_ERROR

    return jsonify({'errors': [{'type': 'fatal',
                                'code': ex.code,
                                'message': str(ex)}]}), code


@app.errorhandler(Exception)
def handle_any(ex: Exception):
    code = getattr(ex, 'code', 500)
    message = getattr(ex, 'description', 'Something went wrong.')
    reason = '.'.join([
        ex.__class__.__module__,
        ex.__class__.__name__
    ])

    return jsonify(code=code, message=message, reason=reason), code


if __name__ == '__main__':
    app.run()
