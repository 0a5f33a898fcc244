""" 커맨드 라인 엔드 포인트

create_commands 함수가 match, eval, transfer 명령을 가진 click 그룹을 만든다.
match 명령의 설정 플래그는 MatchConfig 필드에서 자동으로 생성되며,
전달되지 않은 플래그는 None 으로 남아 설정 파일 / 기본값을 덮어쓰지 않는다.

기본적인 사용 예시:
    python manage.py match --source s.off --target t.off --out runs/pair --k 30 --no-refine
"""

import logging
import os

import click

from model.run.match_config import MatchConfig
from service.config_service import option_value_type
from utils.custom_exceptions import MatchingError
from utils.error_handler import exit_code_for
from utils.rules import ChoiceRule

logger = logging.getLogger(__name__)

CLICK_TYPES = {int: click.INT, float: click.FLOAT}


class MatchingGroup(click.Group):
    """ 앱 컨텍스트 안에서 명령을 실행하고 예외를 종료 코드로 바꾸는 그룹 """

    def __init__(self, *args, app=None, **kwargs):
        super().__init__(*args, **kwargs)
        self.app = app

    def invoke(self, ctx):
        try:
            with self.app.app_context():
                return super().invoke(ctx)

        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise

        except MatchingError as e:
            click.echo('error: {}'.format(e), err=True)
            ctx.exit(e.exit_code)

        except Exception as e:
            logger.exception('unhandled error')
            click.echo('error: {}'.format(e), err=True)
            ctx.exit(exit_code_for(e))


def config_option(item):
    """ MatchConfig 필드 하나를 click 옵션으로 """
    flag = '--' + item.name.replace('_', '-')
    help_text = item.metadata.get('help')
    value_type = option_value_type(item)

    if value_type is bool:
        return click.option('{}/--no-{}'.format(flag, flag[2:]), item.name, default=None, help=help_text)

    choices = [rule.choices for rule in item.metadata.get('rules', ()) if isinstance(rule, ChoiceRule)]
    click_type = click.Choice(choices[0]) if choices else CLICK_TYPES.get(value_type, click.STRING)
    return click.option(flag, item.name, type=click_type, default=None, help=help_text)


def config_options(func):
    for item in reversed(list(MatchConfig.field_types().values())):
        func = config_option(item)(func)
    return func


def create_commands(app, services):

    """ CLI 명령 생성

            Args:
                app     : Flask 앱
                services: Services 클래스

            Returns: click 그룹 (match, eval, transfer)
    """

    @click.group(cls=MatchingGroup, app=app)
    @click.option('-v', '--verbose', is_flag=True, help='DEBUG 로그 출력')
    def cli(verbose):
        if verbose:
            logging.getLogger().setLevel(logging.DEBUG)

    @cli.command('match')
    @click.option('--source', required=True, help='source(S2) 메쉬, 대응 관계의 정의역')
    @click.option('--target', required=True, help='target(S1) 메쉬')
    @click.option('--config', 'config_path', default=None, help='key = value 설정 파일')
    @click.option('--out', 'out_dir', required=True, help='결과 디렉토리')
    @config_options
    def cmd_match(source, target, config_path, out_dir, **overrides):
        config = services.config_service.build_config(config_path, overrides)
        manifest = services.match_service.run_match(source, target, out_dir, config)

        summary = manifest.summary
        click.echo('correspondence\t{}'.format(manifest.outputs['correspondence']))
        click.echo('reconstruction\t{}'.format(manifest.outputs['reconstruction']))
        click.echo('manifest\t{}'.format(manifest.outputs['manifest']))
        click.echo('iterations\t{} (best {})'.format(summary['iterations'], summary['best_iteration']))
        for stage, seconds in manifest.timings.items():
            click.echo('time.{}\t{:.3f}s'.format(stage, seconds))

    @cli.command('eval')
    @click.option('--pred', required=True, help='예측 대응 파일')
    @click.option('--gt', required=True, help='정답 대응 파일')
    @click.option('--target-mesh', required=True, help='인덱스가 가리키는 target 메쉬')
    @click.option('--report', default=None, help='정점별 오차 테이블 경로 (기본: <pred>_errors.tsv)')
    def cmd_eval(pred, gt, target_mesh, report):
        if report is None:
            report = os.path.splitext(pred)[0] + '_errors.tsv'
        result, outputs = services.evaluation_service.evaluate_files(pred, gt, target_mesh, report)

        click.echo('mean_error\t{:.6f}'.format(result.mean_error))
        click.echo('excluded\t{}'.format(result.excluded_count))
        click.echo('curve\t{}'.format(outputs['curve']))

    @cli.command('transfer')
    @click.option('--source', required=True, help='색을 받을 source 메쉬')
    @click.option('--target', required=True, help='좌표색을 만드는 target 메쉬')
    @click.option('--map', 'map_path', required=True, help='T21 대응 파일')
    @click.option('--out', required=True, help='COFF 결과 경로')
    def cmd_transfer(source, target, map_path, out):
        result = services.transfer_service.transfer(source, target, map_path, out)
        click.echo('transfer\t{}\t{} vertices'.format(result['out'], result['vertex_count']))

    return cli
