// Copyright 2026 The polyvis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POLYVIS_SCENE_IO_HPP
#define POLYVIS_SCENE_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyvis/geometry.hpp"
#include "polyvis/paths.hpp"
#include "polyvis/trajvis.hpp"

/// \file
/// Scene JSON, structure dumps and SVG rendering.

namespace polyvis {

/// Scene text that cannot be turned into a valid scene. `line` and
/// `column` are 1-based and point at the offending token or key.
class SceneError : public std::runtime_error {
public:
    enum class Kind { syntax, schema, validation };

    SceneError(Kind kind, const std::string& what, std::size_t line, std::size_t column);

    Kind kind() const { return kind_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    Kind kind_;
    std::size_t line_;
    std::size_t column_;
};

/// Parses {"polygon": [...], "tau_q": [...], "tau_r": [...], "c0"?, "c1"?,
/// "unit"?, "eps"?}. Coordinates are JSON numbers or "p/q" strings.
/// Clockwise polygons are reversed and reported in Scene::warnings.
Scene parse_scene(const std::string& text);
/// Reads a file; I/O failures throw std::runtime_error.
Scene load_scene(const std::string& path);

/// Integer coordinates as numbers, others as "p/q" strings; keys sorted.
std::string serialize_scene(const Scene& scene);

/// Versioned dump {"schema": "polyvis.structure", "version": 1, ...}.
std::string structure_json(const GeneralVisStructure& s);

/// Glass of each trajectory edge pair, skipping empty ones.
struct EdgeGlass {
    std::size_t q_edge = 0;
    std::size_t r_edge = 0;
    VisibilityGlass glass;
};

std::vector<EdgeGlass> edge_glasses(const PathFinder& paths, const Trajectory& tq, const Trajectory& tr);

/// Optional layers drawn over the polygon and trajectories.
struct RenderLayers {
    std::vector<EdgeGlass> glasses;
    std::vector<std::pair<Segment, Segment>> wedges;  ///< visible sub-segments on s1 and s2
    std::vector<Cell> cells;
    IntervalSet q_highlight;  ///< arc lengths on tau_q
    IntervalSet r_highlight;
};

/// SVG 1.1 document. The polygon is a single <path>; each layer is a <g>
/// with id polygon, trajectories, glass, bitangents, wedges, cells or
/// visible. Empty optional layers are omitted.
std::string render_svg(const Scene& scene, const RenderLayers& layers);
/// Throws std::runtime_error when the file cannot be written.
void write_text(const std::string& path, const std::string& text);

}  // namespace polyvis

#endif  // POLYVIS_SCENE_IO_HPP
