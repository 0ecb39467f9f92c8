from marshmallow import Schema, fields, validate


class Lattice(Schema):
    name = fields.String(required=True)
    elements = fields.List(fields.String(), required=True,
                           validate=validate.Length(min=1))
    leq = fields.List(fields.List(fields.Integer(),
                                  validate=validate.Length(equal=2)),
                      required=True)
    mul = fields.List(fields.List(fields.Integer()), required=True)
    provenance = fields.Dict(keys=fields.String())


class Entry(Schema):
    name = fields.String(required=True)
    status = fields.String(required=True,
                           validate=validate.OneOf(
                               ['pass', 'fail', 'skip', 'exhibit']))
    witness = fields.Raw(allow_none=True)


class Report(Schema):
    version = fields.String(required=True)
    schema = fields.Integer(required=True)
    command = fields.List(fields.String(), required=True)
    entries = fields.List(fields.Nested(Entry), required=True)
    summary = fields.Dict(keys=fields.String(), values=fields.Integer(),
                          required=True)


class Generators(Schema):
    generators = fields.List(fields.Integer(validate=validate.Range(min=0)),
                             required=True)


class DeltaPair(Schema):
    x = fields.Integer(required=True, validate=validate.Range(min=1))
    y = fields.Integer(required=True, validate=validate.Range(min=1))


lattice = Lattice()
report = Report()
generators = Generators()
delta_pair = DeltaPair()
