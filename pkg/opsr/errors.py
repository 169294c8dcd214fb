# SPDX-FileCopyrightText: 2024-present Silvano Cerza <silvanocerza@gmail.com>
#
# SPDX-License-Identifier: AGPL-3.0-or-later


class OpsrError(ValueError):
    """
    Base class for every error raised by opsr.
    """


class LotError(OpsrError):
    pass


class LotParseError(LotError):
    """
    The layout document can't be read or doesn't have the expected shape.
    """


class LotValidationError(LotError):
    """
    The layout document is well formed but describes an invalid lot.
    """


class UnknownNodeError(OpsrError):
    pass


class NodeKindError(OpsrError):
    pass


class OccupancyError(OpsrError):
    pass


class UnreachableError(OpsrError):
    pass


class DegenerateError(OpsrError):
    pass


class DegenerateColumnError(DegenerateError):
    """
    A factor column sums to zero, the entropy method can't normalize it.
    """


class DegeneratePopulationError(DegenerateError):
    """
    Less than two candidates, entropy is undefined.
    """


class WeightsError(OpsrError):
    pass


class LotFullError(OpsrError):
    pass


class ScenarioError(OpsrError):
    pass
