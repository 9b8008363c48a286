"""
Репозиторий для работы с файлами экземпляров
Экземпляры хранятся построчно: один JSON-объект на строку
"""
import json
import logging
import math

from engine.exceptions import InvalidConfigurationError, LuneKitError
from models import InstanceSpec
from validators.instance_validator import validate_weights, validate_zeros

logger = logging.getLogger(__name__)


class InstanceRepository:
    """Класс для чтения и записи описаний экземпляров"""

    @staticmethod
    def parse_line(line, source='<строка>'):
        """
        Разобрать одну строку файла экземпляров

        Args:
            line (str): JSON-объект экземпляра
            source (str): Место строки для сообщений об ошибках

        Returns:
            InstanceSpec: Проверенное описание экземпляра
        """
        try:
            data = json.loads(line)
        except json.JSONDecodeError as e:
            raise InvalidConfigurationError(f'{source}: некорректный JSON ({e.msg})') from e

        if not isinstance(data, dict):
            raise InvalidConfigurationError(f'{source}: экземпляр должен быть JSON-объектом')

        zeros = data.get('zeros')
        error = validate_zeros(zeros)
        if error:
            raise InvalidConfigurationError(f'{source}: {error}')

        degree = sum(entry.get('multiplicity', 1) for entry in zeros)
        weights = data.get('weights', 'uniform')
        error = validate_weights(weights, degree)
        if error:
            raise InvalidConfigurationError(f'{source}: {error}')

        if weights != 'uniform' and math.fsum(weights) != 1.0:
            logger.warning('%s: сумма весов %r перенормирована к 1', source, math.fsum(weights))

        normalized = dict(data, zeros=[{'angle': entry['angle'], 'multiplicity': entry.get('multiplicity', 1)}
                                       for entry in zeros])
        instance = InstanceSpec.from_dict(normalized)
        try:
            config = instance.to_configuration()
            instance.to_weights(config)
        except LuneKitError as e:
            raise InvalidConfigurationError(f'{source}: {e}') from e

        if config.distinct_count < len(zeros):
            logger.info('%s: совпадающие углы слиты, различных нулей %d из %d',
                        source, config.distinct_count, len(zeros))
        return instance

    @staticmethod
    def load(path):
        """
        Прочитать все экземпляры из файла; пустые строки пропускаются

        Returns:
            list: Список InstanceSpec в порядке строк файла
        """
        instances = []
        with open(path, encoding='utf-8') as stream:
            for number, line in enumerate(stream, start=1):
                if not line.strip():
                    continue
                instances.append(InstanceRepository.parse_line(line, f'{path}:{number}'))
        if not instances:
            raise InvalidConfigurationError(f'{path}: файл не содержит ни одного экземпляра')
        logger.info('Загружено экземпляров: %d из %s', len(instances), path)
        return instances

    @staticmethod
    def dumps(instance):
        """Строка файла для экземпляра; углы записываются repr-точно"""
        return json.dumps(instance.to_dict(), ensure_ascii=False)

    @staticmethod
    def save(path, instances):
        """Записать экземпляры в файл, по одному на строку"""
        with open(path, 'w', encoding='utf-8') as stream:
            for instance in instances:
                stream.write(InstanceRepository.dumps(instance) + '\n')
