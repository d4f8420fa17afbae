"""Command harness: aggregates controllers and routes commands by name prefix."""

import logging
from typing import Any, Dict, List

from pydantic import ValidationError

from .config import get_config
from .controllers.apsp import ApspController
from .controllers.bench import BenchController
from .controllers.gen import GenController
from .controllers.oracle import OracleController
from .controllers.verify import VerifyController
from .errors import ApspError, ContractError
from .models import Command

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class ApspHarness:
    def __init__(self):
        self.config = get_config()

        is_valid, message = self.config.validate_config()
        if not is_valid:
            logger.warning(f"Configuration warning: {message}")
        else:
            logger.debug(f"Configuration valid: {self.config.worker_count} worker thread(s)")

        self.gen_controller = GenController()
        self.apsp_controller = ApspController()
        self.oracle_controller = OracleController()
        self.verify_controller = VerifyController()
        self.bench_controller = BenchController()

    def get_commands(self) -> List[Command]:
        commands: List[Command] = []
        commands.extend(self.gen_controller.get_commands())
        commands.extend(self.apsp_controller.get_commands())
        commands.extend(self.oracle_controller.get_commands())
        commands.extend(self.verify_controller.get_commands())
        commands.extend(self.bench_controller.get_commands())
        return commands

    async def handle_command(self, name: str, arguments: Dict[str, Any]) -> Dict[str, Any]:
        """Handle a command by delegating to the controller owning its prefix"""
        try:
            logger.debug(f"Calling command: {name} with arguments: {arguments}")

            if name.startswith("gen_"):
                result = await self.gen_controller.handle_command(name, arguments)
            elif name.startswith("apsp_"):
                result = await self.apsp_controller.handle_command(name, arguments)
            elif name.startswith("oracle_"):
                result = await self.oracle_controller.handle_command(name, arguments)
            elif name.startswith("verify_"):
                result = await self.verify_controller.handle_command(name, arguments)
            elif name.startswith("bench_"):
                result = await self.bench_controller.handle_command(name, arguments)
            else:
                result = {"error": f"Unknown command: {name}"}

            if "error" in result:
                result.setdefault("exit_code", EXIT_USAGE)
            result.setdefault("exit_code", EXIT_OK)
            return result

        except (ValidationError, ContractError) as e:
            logger.error(f"Invalid arguments for {name}: {e}")
            return {"error": str(e), "exit_code": EXIT_USAGE}
        except (ApspError, OSError) as e:
            logger.error(f"Error calling command {name}: {e}")
            return {"error": str(e), "exit_code": EXIT_FAILED}
