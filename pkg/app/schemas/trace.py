"""
Schemas Trace - Sérialisation des résumés de run
"""
from marshmallow import Schema, fields


class MilestoneRowSchema(Schema):
    """Schema pour une ligne de progression"""
    episode = fields.Int()
    mean_ber = fields.Float()
    mean_snr_db = fields.Float()
    entropy = fields.Float()
    success_rate = fields.Float()
    window_success_rate = fields.Float()
    epsilon = fields.Float()


class FinalMetricsSchema(Schema):
    """Schema pour les métriques finales"""
    final_ber = fields.Float()
    final_snr_db = fields.Float()
    clean_snr_db = fields.Float()
    final_entropy = fields.Float()
    success_rate = fields.Float(allow_none=True)
    window_success_rate = fields.Float(allow_none=True)
    success_defined = fields.Bool()
    mean_episode_reward = fields.Float()
    cumulative_reward = fields.Float()
    total_jams = fields.Int()
    final_plr = fields.List(fields.Float())
    final_plr_fec = fields.List(fields.List(fields.Float()))


class TraceSummarySchema(Schema):
    """Schema du fichier summary.json d'un run"""
    run_id = fields.Str()
    episodes = fields.Int()
    config = fields.Method('get_config')
    usage_counts = fields.List(fields.Int())
    milestones = fields.List(fields.Nested(MilestoneRowSchema))
    finals = fields.Nested(FinalMetricsSchema)

    def get_config(self, obj):
        return obj.config.to_dict()
