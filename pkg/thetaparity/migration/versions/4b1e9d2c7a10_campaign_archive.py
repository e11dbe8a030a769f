"""Campaign archive

Revision ID: 4b1e9d2c7a10
Revises: 
Create Date: 2026-10-18 12:00:00.000000

"""
from typing import Sequence, Union

from alembic import op
import sqlalchemy as sa

# revision identifiers, used by Alembic.
revision: str = '4b1e9d2c7a10'
down_revision: Union[str, None] = None
branch_labels: Union[str, Sequence[str], None] = None
depends_on: Union[str, Sequence[str], None] = None


def upgrade() -> None:
    op.create_table('campaignruns',
                    sa.Column('id', sa.Uuid(), nullable=False, comment='Уникальный идентификатор записи.'),
                    sa.Column('command', sa.String(), nullable=False),
                    sa.Column('seed', sa.String(), nullable=False),
                    sa.Column('trials', sa.Integer(), nullable=False),
                    sa.Column('failures', sa.Integer(), nullable=False),
                    sa.Column('config', sa.JSON(), nullable=False),
                    sa.Column('summary', sa.JSON(), nullable=False),
                    sa.Column('created_at', sa.TIMESTAMP(), server_default=sa.func.now(), nullable=False,
                              comment='Дата и время создания записи.'),
                    sa.Column('updated_at', sa.TIMESTAMP(), server_default=sa.func.now(), nullable=False,
                              comment='Дата и время последнего обновления записи.'),
                    sa.PrimaryKeyConstraint('id')
    )
    op.create_index(op.f('ix_campaignruns_id'), 'campaignruns', ['id'], unique=True)
    op.create_index(op.f('ix_campaignruns_command'), 'campaignruns', ['command'], unique=False)

    op.create_table('trialresults',
                    sa.Column('id', sa.Uuid(), nullable=False, comment='Уникальный идентификатор записи.'),
                    sa.Column('run_id', sa.Uuid(), nullable=False),
                    sa.Column('trial', sa.Integer(), nullable=False),
                    sa.Column('seed', sa.String(), nullable=False),
                    sa.Column('passed', sa.Boolean(), nullable=False),
                    sa.Column('payload', sa.JSON(), nullable=False),
                    sa.Column('created_at', sa.TIMESTAMP(), server_default=sa.func.now(), nullable=False,
                              comment='Дата и время создания записи.'),
                    sa.Column('updated_at', sa.TIMESTAMP(), server_default=sa.func.now(), nullable=False,
                              comment='Дата и время последнего обновления записи.'),
                    sa.ForeignKeyConstraint(['run_id'], ['campaignruns.id'], ondelete='CASCADE'),
                    sa.PrimaryKeyConstraint('id')
    )
    op.create_index(op.f('ix_trialresults_id'), 'trialresults', ['id'], unique=True)
    op.create_index(op.f('ix_trialresults_run_id'), 'trialresults', ['run_id'], unique=False)


def downgrade() -> None:
    op.drop_index(op.f('ix_trialresults_run_id'), table_name='trialresults')
    op.drop_index(op.f('ix_trialresults_id'), table_name='trialresults')
    op.drop_table('trialresults')
    op.drop_index(op.f('ix_campaignruns_command'), table_name='campaignruns')
    op.drop_index(op.f('ix_campaignruns_id'), table_name='campaignruns')
    op.drop_table('campaignruns')
