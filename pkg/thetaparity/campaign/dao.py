from thetaparity.campaign.models import CampaignRun, TrialResult
from thetaparity.dao.base import BaseDAO


class CampaignRunDAO(BaseDAO[CampaignRun]):
    """
    Класс dao кампаний
    """
    model = CampaignRun


class TrialResultDAO(BaseDAO[TrialResult]):
    """
    Класс dao испытаний
    """
    model = TrialResult
