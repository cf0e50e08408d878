#pragma once

// Environment/trajectory plot: corridor walls, object markers, planned
// waypoints and one executed-trajectory polyline per command.

#include <algorithm>
#include <string>
#include <vector>

#include "nav/navigator.hpp"
#include "nav/text.hpp"
#include "nav/world.hpp"

namespace nav {

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace detail

inline std::string render_path_plot(const EnvironmentMap& map,
                                    const std::vector<CommandOutcome>& outcomes) {
    double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
    bool first = true;
    for (const auto& w : map.walls) {
        for (const Point p : {w.a, w.b}) {
            if (first) {
                min_x = max_x = p.x;
                min_y = max_y = p.y;
                first = false;
            }
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }
    const double pad = 1.0;
    const double scale = 30.0;
    const double width = (max_x - min_x + 2 * pad) * scale;
    const double height = (max_y - min_y + 2 * pad) * scale;
    auto sx = [&](double x) { return fmt_num((x - min_x + pad) * scale); };
    auto sy = [&](double y) { return fmt_num((max_y - y + pad) * scale); };

    static const char* kColors[] = {"#d03030", "#2f9e44", "#1971c2",
                                    "#9c36b5", "#e8590c", "#0b7285"};

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_num(width) +
           "\" height=\"" + fmt_num(height) + "\" viewBox=\"0 0 " + fmt_num(width) + " " +
           fmt_num(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (const auto& w : map.walls) {
        svg += "<line x1=\"" + sx(w.a.x) + "\" y1=\"" + sy(w.a.y) + "\" x2=\"" + sx(w.b.x) +
               "\" y2=\"" + sy(w.b.y) + "\" stroke=\"#343a40\" stroke-width=\"3\"/>\n";
    }
    for (const auto& obj : map.objects) {
        svg += "<circle cx=\"" + sx(obj.position.x) + "\" cy=\"" + sy(obj.position.y) +
               "\" r=\"3.5\" fill=\"#868e96\"/>\n";
        svg += "<text x=\"" + sx(obj.position.x) + "\" y=\"" + sy(obj.position.y) +
               "\" dx=\"5\" dy=\"3\" font-size=\"8\" fill=\"#495057\">" +
               detail::xml_escape(obj.name) + "</text>\n";
    }
    for (const auto& j : map.junctions) {
        svg += "<circle cx=\"" + sx(j.position.x) + "\" cy=\"" + sy(j.position.y) +
               "\" r=\"4\" fill=\"none\" stroke=\"#868e96\" stroke-dasharray=\"2,2\"/>\n";
    }

    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        const char* color = kColors[k % (sizeof(kColors) / sizeof(kColors[0]))];
        for (const auto& path : outcomes[k].paths) {
            for (const auto& wp : path.waypoints) {
                svg += "<circle cx=\"" + sx(wp.x) + "\" cy=\"" + sy(wp.y) +
                       "\" r=\"2\" fill=\"" + color + "\" fill-opacity=\"0.5\"/>\n";
            }
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"";
        for (const auto& s : outcomes[k].trajectory) {
            svg += sx(s.pose.x) + "," + sy(s.pose.y) + " ";
        }
        if (!outcomes[k].trajectory.empty()) svg.pop_back();
        svg += "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace nav
