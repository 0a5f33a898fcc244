""" 커맨드 라인 실행 진입점

종료 코드:
    0: 성공
    1: 사용법 오류
    2: 입력 오류 (파일 파싱, 설정, 대응 파일 범위)
    3: 수치 계산 실패 (고유값 분해, NaN)
"""

import sys

import click

from app import create_app
from utils.error_handler import exit_code_for
from view.cli import create_commands


def main(argv=None, test_config=None):
    app = create_app(test_config)
    cli = create_commands(app, app.services)

    try:
        result = cli.main(args=argv, prog_name='manage.py', standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return exit_code_for(e)
    except click.Abort as e:
        click.echo('Aborted!', err=True)
        return exit_code_for(e)

    # standalone_mode=False 에서는 ctx.exit(code) 가 종료 코드로 반환된다
    return result if isinstance(result, int) else 0


if __name__ == '__main__':
    sys.exit(main())
