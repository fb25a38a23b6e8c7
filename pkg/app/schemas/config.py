"""
Schemas Configuration - Chargement et validation des paramètres d'expérience
"""
from marshmallow import Schema, fields, validate, validates, validates_schema, post_load, ValidationError

from app.models.agent import AgentKind, PolicyKind, PolicyMode, EpsilonSchedule
from app.models.jammer import JammerMode, JammerSettings
from app.models.qnetwork import OptimizerKind, TrainingHyperparams
from app.models.training import SimConfig

AGENT_KINDS = [kind.value for kind in AgentKind]
JAMMER_MODES = [mode.value for mode in JammerMode]
POLICY_KINDS = [kind.value for kind in PolicyKind]
OPTIMIZER_KINDS = [kind.value for kind in OptimizerKind]


class TrainingHyperparamsSchema(Schema):
    """Schema pour les hyperparamètres d'apprentissage"""
    learning_rate = fields.Float(validate=validate.Range(min=0, min_inclusive=False))
    discount = fields.Float(validate=validate.Range(min=0, max=1, min_inclusive=False, max_inclusive=False))
    batch_size = fields.Int(validate=validate.Range(min=1))
    buffer_capacity = fields.Int(validate=validate.Range(min=1))
    target_update_period = fields.Int(validate=validate.Range(min=1))
    hidden_sizes = fields.List(fields.Int(validate=validate.Range(min=1)), validate=validate.Length(min=1))
    optimizer = fields.Str(validate=validate.OneOf(OPTIMIZER_KINDS))
    adam_beta1 = fields.Float(validate=validate.Range(min=0, max=1, max_inclusive=False))
    adam_beta2 = fields.Float(validate=validate.Range(min=0, max=1, max_inclusive=False))
    adam_epsilon = fields.Float(validate=validate.Range(min=0, min_inclusive=False))

    @validates_schema
    def validate_batch(self, data, **kwargs):
        defaults = TrainingHyperparams()
        batch = data.get('batch_size', defaults.batch_size)
        capacity = data.get('buffer_capacity', defaults.buffer_capacity)
        if batch > capacity:
            raise ValidationError(
                f'batch_size ({batch}) dépasse la capacité du tampon ({capacity}).',
                field_name='batch_size'
            )

    @post_load
    def make_hyperparams(self, data, **kwargs):
        return TrainingHyperparams(**data)


class EpsilonScheduleSchema(Schema):
    """Schema pour la décroissance d'epsilon"""
    start = fields.Float(validate=validate.Range(min=0, max=1))
    floor = fields.Float(validate=validate.Range(min=0, max=1))
    decay_factor = fields.Float(validate=validate.Range(min=0, max=1, min_inclusive=False))

    @validates_schema
    def validate_bounds(self, data, **kwargs):
        defaults = EpsilonSchedule()
        if data.get('floor', defaults.floor) > data.get('start', defaults.start):
            raise ValidationError('floor doit être inférieur ou égal à start.', field_name='floor')

    @post_load
    def make_schedule(self, data, **kwargs):
        return EpsilonSchedule(**data)


class JammerSettingsSchema(Schema):
    """Schema pour les réglages du brouilleur"""
    mode = fields.Str(validate=validate.OneOf(JAMMER_MODES))
    follow_probability = fields.Float(validate=validate.Range(min=0, max=1))
    dirichlet_prior = fields.Float(validate=validate.Range(min=0, min_inclusive=False))

    @post_load
    def make_settings(self, data, **kwargs):
        return JammerSettings(**data)


class PolicyModeSchema(Schema):
    """Schema pour la règle de sélection d'action"""
    kind = fields.Str(validate=validate.OneOf(POLICY_KINDS))
    temperature = fields.Float(validate=validate.Range(min=0, min_inclusive=False))
    repeat_penalty = fields.Float(validate=validate.Range(min=0))

    @post_load
    def make_policy(self, data, **kwargs):
        return PolicyMode(**data)


class SimConfigSchema(Schema):
    """
    Schema du fichier de configuration JSON.
    Les noms de champs reprennent ceux de SimConfig ; les champs absents
    gardent leur valeur par défaut.
    """
    num_channels = fields.Int(validate=validate.Range(min=2))
    episodes = fields.Int(validate=validate.Range(min=0))
    jamming_power = fields.Float(validate=validate.Range(min=0))
    signal_power = fields.Float(validate=validate.Range(min=0, min_inclusive=False))
    noise_power = fields.Float(validate=validate.Range(min=0, min_inclusive=False))
    fading_scale = fields.Float(validate=validate.Range(min=0, min_inclusive=False))
    fading_floor = fields.Float(validate=validate.Range(min=0))
    diversity_bonus = fields.Float()
    jam_penalty = fields.Float()
    packet_sizes = fields.List(fields.Int(validate=validate.Range(min=1)), validate=validate.Length(min=1))
    fec_levels = fields.List(fields.Int(validate=validate.Range(min=0)), validate=validate.Length(min=1))
    parity_bits_per_t = fields.Int(validate=validate.Range(min=0))
    milestone_period = fields.Int(validate=validate.Range(min=1))
    milestone_window = fields.Int(validate=validate.Range(min=1))
    seed = fields.Int(validate=validate.Range(min=0))
    agent_kind = fields.Str(validate=validate.OneOf(AGENT_KINDS))
    training = fields.Nested(TrainingHyperparamsSchema)
    epsilon = fields.Nested(EpsilonScheduleSchema)
    jammer = fields.Nested(JammerSettingsSchema)
    policy = fields.Nested(PolicyModeSchema)

    @validates_schema
    def validate_milestones(self, data, **kwargs):
        defaults = SimConfig()
        window = data.get('milestone_window', defaults.milestone_window)
        period = data.get('milestone_period', defaults.milestone_period)
        episodes = data.get('episodes', defaults.episodes)
        if window > period:
            raise ValidationError(
                f'milestone_window ({window}) dépasse milestone_period ({period}).',
                field_name='milestone_window'
            )
        if episodes > 0 and period > episodes:
            raise ValidationError(
                f'milestone_period ({period}) dépasse episodes ({episodes}).',
                field_name='milestone_period'
            )

    @post_load
    def make_config(self, data, **kwargs):
        return SimConfig(**data)


class ExperimentOptionsSchema(Schema):
    """Schema des options de la ligne de commande (après découpage des listes)"""
    jsr = fields.List(fields.Float(validate=validate.Range(min=0)), validate=validate.Length(min=1))
    seeds = fields.List(fields.Int(validate=validate.Range(min=0)), validate=validate.Length(min=1))
    episodes = fields.Int(validate=validate.Range(min=1))
    agent = fields.Str(validate=validate.OneOf(AGENT_KINDS))
    jammer_mode = fields.Str(validate=validate.OneOf(JAMMER_MODES))
    out = fields.Str(validate=validate.Length(min=1))
    config = fields.Str(validate=validate.Length(min=1))
    policy = fields.Str(validate=validate.OneOf(POLICY_KINDS))
    tau = fields.Float(validate=validate.Range(min=0, min_inclusive=False))
    repeat_penalty = fields.Float(validate=validate.Range(min=0))
    optimizer = fields.Str(validate=validate.OneOf(OPTIMIZER_KINDS))
    workers = fields.Int(validate=validate.Range(min=1))
    validate_fec = fields.Bool(load_default=False)
    dump_weights = fields.Bool(load_default=False)
    log_level = fields.Str(validate=validate.OneOf(['DEBUG', 'INFO', 'WARNING', 'ERROR']))

    @validates('seeds')
    def validate_unique_seeds(self, value, **kwargs):
        if len(set(value)) != len(value):
            raise ValidationError('Les graines doivent être distinctes.')

    @validates('jsr')
    def validate_unique_jsr(self, value, **kwargs):
        if len(set(value)) != len(value):
            raise ValidationError('Les niveaux de brouillage doivent être distincts.')
