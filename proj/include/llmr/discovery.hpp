#pragma once

#include "llmr/config.hpp"

#include <set>
#include <vector>

namespace llmr {

/// One mapper unit of work.
struct WorkItem {
    fs::path input_path;
    fs::path output_path;

    bool operator==(WorkItem const&) const = default;
};

enum class SourceKind { directory, list_file };

struct InputSource {
    SourceKind kind{SourceKind::directory};
    fs::path path;
};

/// Classify `path` (resolved against `base`) as a directory or a list file.
InputSource classify_input(fs::path const& path, fs::path const& base = {});

/**
 * Enumerate input files.
 *
 * Directory mode returns regular files under the directory (only its immediate
 * children unless `subdir`), skipping dot-prefixed entries, sorted by relative
 * path. Each returned path is `source.path / relative`, spelled the way the
 * caller spelled the root. List-file mode returns the non-blank lines in file
 * order. Relative paths are checked against `base`.
 *
 * Throws Error when nothing is found, a listed file does not exist, or a path
 * contains whitespace (the manifest format is whitespace-delimited).
 */
std::vector<fs::path> discover_inputs(InputSource const& source, bool subdir,
                                      fs::path const& base = {});

/// `output_root / rel(input) + delimiter + ext`; rel is the basename unless `subdir`.
fs::path map_output_path(fs::path const& input_path, fs::path const& input_root,
                         fs::path const& output_root, bool subdir,
                         std::string const& delimiter, std::string const& ext);

/**
 * Pair every input with its output path.
 *
 * List-file inputs have no common root, so their outputs always use the
 * basename; two list entries with the same basename are rejected.
 */
std::vector<WorkItem> make_work_items(std::vector<fs::path> const& inputs,
                                      InputSource const& source, LaunchConfig const& config);

/// Create the parent directory of every output path. Returns the directories
/// that did not exist before.
std::set<fs::path> mirror_output_tree(std::vector<WorkItem> const& items,
                                      fs::path const& output_root,
                                      fs::path const& base = {});

bool contains_whitespace(std::string_view s) noexcept;

}  // namespace llmr
