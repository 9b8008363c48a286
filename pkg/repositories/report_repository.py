"""
Запись отчётов проверок
Все отчёты проходят через единственного писателя: строки JSON с
отсортированными ключами, поэтому одинаковые данные дают одинаковые байты
"""
import csv
import json
import logging
import sys

logger = logging.getLogger(__name__)


def dumps_record(record):
    """Каноническая строка JSON для одной записи отчёта"""
    return json.dumps(record, sort_keys=True, ensure_ascii=False, allow_nan=False)


class ReportWriter:
    """
    Построчный писатель отчётов
    Без пути пишет в стандартный вывод и не закрывает его
    """

    def __init__(self, path=None):
        self.path = path
        self.stream = None
        self.count = 0

    def __enter__(self):
        if self.path is None:
            self.stream = sys.stdout
        else:
            self.stream = open(self.path, 'w', encoding='utf-8', newline='\n')
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self.path is not None and self.stream:
            self.stream.close()
        elif self.stream:
            self.stream.flush()
        logger.debug('Записано строк отчёта: %d (%s)', self.count, self.path or 'stdout')

    def write(self, record):
        """Записать одну запись отчёта"""
        self.stream.write(dumps_record(record) + '\n')
        self.count += 1


def open_report_writer(path=None):
    """Получить писателя отчётов для использования в with"""
    return ReportWriter(path)


def write_csv(path, header, rows):
    """Записать таблицу координат в CSV"""
    with open(path, 'w', encoding='utf-8', newline='') as stream:
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)
