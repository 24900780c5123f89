#!/usr/bin/env python3
"""Generate README.md sections from code definitions.

This script updates sections of README.md marked with AUTO-GENERATED comments.
Run it after adding/modifying commands to keep documentation in sync.

Usage:
    python scripts/generate_readme.py
"""
import re
from pathlib import Path

# Add src to path for imports
import sys
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from euler_factor.commands import COMMANDS, SIMPLE_COMMANDS
from euler_factor.config import DEFAULT_CONFIG


def generate_commands_table() -> str:
    """Generate markdown table for payload commands."""
    lines = [
        "| Command | Description | Payload | Batch |",
        "|---------|-------------|---------|-------|",
    ]

    for cmd_def in COMMANDS.values():
        command = f"`{cmd_def.name}`"
        payload = "`" + cmd_def.display_keys.replace("|", "\\|") + "`"
        batch = "yes" if cmd_def.batch else ""
        lines.append(f"| {command} | {cmd_def.description} | {payload} | {batch} |")

    for name, desc in SIMPLE_COMMANDS.values():
        lines.append(f"| `{name}` | {desc} | | |")

    return "\n".join(lines)


def generate_command_examples() -> str:
    """Generate one example invocation per payload command."""
    lines = ["```bash"]
    for cmd_def in COMMANDS.values():
        lines.append(f"echo '{cmd_def.example}' | euler-factor {cmd_def.name}")
    lines.append("```")
    return "\n".join(lines)


def generate_default_config() -> str:
    """Generate the default config.toml."""
    lines = ["```toml"]
    for section, values in DEFAULT_CONFIG.items():
        lines.append(f"[{section}]")
        for key, value in values.items():
            lines.append(f"{key} = {value!r}")
        lines.append("")
    lines[-1] = "```"
    return "\n".join(lines)


def update_readme():
    """Update README.md with auto-generated sections."""
    readme_path = Path(__file__).parent.parent / "README.md"
    content = readme_path.read_text()

    # Define section generators
    sections = {
        "COMMANDS": generate_commands_table,
        "COMMAND_EXAMPLES": generate_command_examples,
        "DEFAULT_CONFIG": generate_default_config,
    }

    # Replace each section
    for section_name, generator in sections.items():
        pattern = rf"(<!-- AUTO-GENERATED: {section_name} -->\n).*?(\n<!-- END AUTO-GENERATED -->)"
        content = re.sub(pattern, lambda m: m.group(1) + generator() + m.group(2), content, flags=re.DOTALL)

    readme_path.write_text(content)
    print(f"Updated {readme_path}")

    # Show what was generated
    for section_name, generator in sections.items():
        print(f"\n{section_name}:")
        print(generator()[:200] + "..." if len(generator()) > 200 else generator())


if __name__ == "__main__":
    update_readme()
