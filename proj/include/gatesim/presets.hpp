#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gatesim/config.hpp"

namespace gatesim {

/// Everything needed to reproduce a run: the preset (if any), the fully
/// materialized settings, the tool version, and the files that were written.
/// Serialized as the same flat `key = value` grammar the config parser reads,
/// so a manifest can be fed back through --config verbatim.
struct RunManifest {
    std::string scenario;  // preset name or "custom"
    Settings resolved;
    std::string version;
    std::vector<std::string> outputs;
};

std::string manifest_text(const RunManifest& manifest);

/// Baked-in scenario settings per preset:
///   simple      - 4 homogeneous gates, constant 39 s service, 20000 s horizon
///   sweep-ord   - gate sweep 12..28 at the ORD flow, 26000 s window
///   sweep-crest - gate sweep 36..52 at the doubled flow, 26000 s window
///   cultures    - the four behavior profiles, sweep 20..28 plus 21-gate traces
/// Explicit user settings override these.
Settings preset_defaults(const std::string& name);

/// Names of the known presets, for help text.
const std::vector<std::string>& preset_names();

/// Resolve settings (preset defaults underneath explicit settings), run the
/// scenario/sweep, and write every output CSV plus manifest.txt into the out
/// directory. Progress goes to `log`. Returns 0 when all requested outputs
/// were written.
int execute_run(const Settings& explicit_settings, std::ostream& log);

}  // namespace gatesim
