#pragma once

// The three built-in environments. The JSON below is byte-identical to the
// files shipped under data/environments/; a test keeps them in sync.

#include <string_view>

#include "nav/world.hpp"

namespace nav {

inline constexpr std::string_view kEnvJson_A = R"envjson({
  "name": "env_a",
  "safe_margin": 0.5,
  "start_pose": {
    "x": 0,
    "y": 0,
    "theta": 0
  },
  "corridors": [
    {
      "name": "Main Corridor",
      "x_min": -1,
      "x_max": 14,
      "y_min": -2,
      "y_max": 2
    }
  ],
  "objects": [
    {
      "name": "Room-number-plate-101",
      "x": 1,
      "y": -1.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Room-number-plate-102",
      "x": 2.3,
      "y": 1.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Room-number-plate-103",
      "x": 3.6,
      "y": -1.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Room-number-plate-104",
      "x": 4.9,
      "y": 1.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Room-number-plate-105",
      "x": 6.2,
      "y": -1.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Room-number-plate-106",
      "x": 7.5,
      "y": 1.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Room-number-plate-107",
      "x": 8.8,
      "y": -1.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Room-number-plate-108",
      "x": 10.1,
      "y": 1.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Room-number-plate-109",
      "x": 11.4,
      "y": -1.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Room-number-plate-110",
      "x": 12.700000000000001,
      "y": 1.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Window",
      "x": 13.45,
      "y": 0,
      "corridor": "Main Corridor"
    }
  ],
  "junctions": [],
  "walls": [
    {
      "x1": -1,
      "y1": -2,
      "x2": 14,
      "y2": -2
    },
    {
      "x1": 14,
      "y1": -2,
      "x2": 14,
      "y2": 2
    },
    {
      "x1": 14,
      "y1": 2,
      "x2": -1,
      "y2": 2
    },
    {
      "x1": -1,
      "y1": 2,
      "x2": -1,
      "y2": -2
    }
  ]
}
)envjson";

inline constexpr std::string_view kEnvJson_B = R"envjson({
  "name": "env_b",
  "safe_margin": 0.5,
  "start_pose": {
    "x": 0,
    "y": 0,
    "theta": 0
  },
  "corridors": [
    {
      "name": "Main Corridor",
      "x_min": -1,
      "x_max": 9,
      "y_min": -2,
      "y_max": 2
    },
    {
      "name": "Side Corridor",
      "x_min": 5,
      "x_max": 9,
      "y_min": -2,
      "y_max": 16
    }
  ],
  "objects": [
    {
      "name": "Room-number-plate-101",
      "x": 0.5,
      "y": -1.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Room-number-plate-102",
      "x": 1.4,
      "y": 1.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Room-number-plate-103",
      "x": 2.3,
      "y": -1.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Room-number-plate-104",
      "x": 3.2,
      "y": 1.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Room-number-plate-105",
      "x": 4.1,
      "y": -1.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Room-number-plate-106",
      "x": 5,
      "y": 1.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Room-number-plate-107",
      "x": 5.55,
      "y": 4,
      "corridor": "Side Corridor"
    },
    {
      "name": "Room-number-plate-108",
      "x": 8.45,
      "y": 7,
      "corridor": "Side Corridor"
    },
    {
      "name": "Room-number-plate-109",
      "x": 5.55,
      "y": 10,
      "corridor": "Side Corridor"
    },
    {
      "name": "Room-number-plate-110",
      "x": 8.45,
      "y": 13,
      "corridor": "Side Corridor"
    },
    {
      "name": "Window 01",
      "x": 6,
      "y": 15.45,
      "corridor": "Side Corridor"
    },
    {
      "name": "Window 02",
      "x": 8,
      "y": 15.45,
      "corridor": "Side Corridor"
    }
  ],
  "junctions": [
    {
      "x": 7,
      "y": 0,
      "connects": [
        "Main Corridor",
        "Side Corridor"
      ]
    }
  ],
  "walls": [
    {
      "x1": -1,
      "y1": -2,
      "x2": 9,
      "y2": -2
    },
    {
      "x1": 9,
      "y1": -2,
      "x2": 9,
      "y2": 16
    },
    {
      "x1": 9,
      "y1": 16,
      "x2": 5,
      "y2": 16
    },
    {
      "x1": 5,
      "y1": 16,
      "x2": 5,
      "y2": 2
    },
    {
      "x1": 5,
      "y1": 2,
      "x2": -1,
      "y2": 2
    },
    {
      "x1": -1,
      "y1": 2,
      "x2": -1,
      "y2": -2
    }
  ]
}
)envjson";

inline constexpr std::string_view kEnvJson_C = R"envjson({
  "name": "env_c",
  "safe_margin": 0.5,
  "start_pose": {
    "x": 0,
    "y": -3,
    "theta": 0
  },
  "corridors": [
    {
      "name": "Main Corridor",
      "x_min": -2,
      "x_max": 16,
      "y_min": -5,
      "y_max": 0
    },
    {
      "name": "Corridor 01",
      "x_min": -2,
      "x_max": 3,
      "y_min": -5,
      "y_max": 24.5
    },
    {
      "name": "Corridor 02",
      "x_min": 11,
      "x_max": 16,
      "y_min": -5,
      "y_max": 24.5
    }
  ],
  "objects": [
    {
      "name": "Room-number-plate-101",
      "x": -1.45,
      "y": 2,
      "corridor": "Corridor 01"
    },
    {
      "name": "Room-number-plate-102",
      "x": 2.45,
      "y": 3.5,
      "corridor": "Corridor 01"
    },
    {
      "name": "Room-number-plate-103",
      "x": -1.45,
      "y": 5,
      "corridor": "Corridor 01"
    },
    {
      "name": "Room-number-plate-104",
      "x": 2.45,
      "y": 6.5,
      "corridor": "Corridor 01"
    },
    {
      "name": "Room-number-plate-105",
      "x": -1.45,
      "y": 8,
      "corridor": "Corridor 01"
    },
    {
      "name": "Room-number-plate-106",
      "x": 2.45,
      "y": 9.5,
      "corridor": "Corridor 01"
    },
    {
      "name": "Room-number-plate-107",
      "x": -1.45,
      "y": 11,
      "corridor": "Corridor 01"
    },
    {
      "name": "Room-number-plate-108",
      "x": 2.45,
      "y": 12.5,
      "corridor": "Corridor 01"
    },
    {
      "name": "Room-number-plate-109",
      "x": -1.45,
      "y": 14,
      "corridor": "Corridor 01"
    },
    {
      "name": "Room-number-plate-110",
      "x": 2.45,
      "y": 15.5,
      "corridor": "Corridor 01"
    },
    {
      "name": "Room-number-plate-111",
      "x": -1.45,
      "y": 17,
      "corridor": "Corridor 01"
    },
    {
      "name": "Room-number-plate-112",
      "x": 2.45,
      "y": 18.5,
      "corridor": "Corridor 01"
    },
    {
      "name": "Room-number-plate-113",
      "x": -1.45,
      "y": 20,
      "corridor": "Corridor 01"
    },
    {
      "name": "Room-number-plate-114",
      "x": 2.45,
      "y": 21.5,
      "corridor": "Corridor 01"
    },
    {
      "name": "Room-number-plate-201",
      "x": 11.55,
      "y": 2,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-202",
      "x": 15.45,
      "y": 3.2,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-203",
      "x": 11.55,
      "y": 4.4,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-204",
      "x": 15.45,
      "y": 5.6,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-205",
      "x": 11.55,
      "y": 6.8,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-206",
      "x": 15.45,
      "y": 8,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-207",
      "x": 11.55,
      "y": 9.2,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-208",
      "x": 15.45,
      "y": 10.4,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-209",
      "x": 11.55,
      "y": 11.6,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-210",
      "x": 15.45,
      "y": 12.799999999999999,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-211",
      "x": 11.55,
      "y": 14,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-212",
      "x": 15.45,
      "y": 15.2,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-213",
      "x": 11.55,
      "y": 16.4,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-214",
      "x": 15.45,
      "y": 17.6,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-215",
      "x": 11.55,
      "y": 18.8,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-216",
      "x": 15.45,
      "y": 20,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-217",
      "x": 11.55,
      "y": 21.2,
      "corridor": "Corridor 02"
    },
    {
      "name": "Room-number-plate-218",
      "x": 15.45,
      "y": 22.4,
      "corridor": "Corridor 02"
    },
    {
      "name": "Stairs 01",
      "x": 2,
      "y": -4.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Stairs 02",
      "x": 12,
      "y": -4.45,
      "corridor": "Main Corridor"
    },
    {
      "name": "Main Entrance",
      "x": 7,
      "y": -4.45,
      "corridor": "Main Corridor"
    }
  ],
  "junctions": [
    {
      "x": 0.5,
      "y": -2.5,
      "connects": [
        "Main Corridor",
        "Corridor 01"
      ]
    },
    {
      "x": 13.5,
      "y": -2.5,
      "connects": [
        "Main Corridor",
        "Corridor 02"
      ]
    }
  ],
  "walls": [
    {
      "x1": -2,
      "y1": -5,
      "x2": 16,
      "y2": -5
    },
    {
      "x1": 16,
      "y1": -5,
      "x2": 16,
      "y2": 24.5
    },
    {
      "x1": 16,
      "y1": 24.5,
      "x2": 11,
      "y2": 24.5
    },
    {
      "x1": 11,
      "y1": 24.5,
      "x2": 11,
      "y2": 0
    },
    {
      "x1": 11,
      "y1": 0,
      "x2": 3,
      "y2": 0
    },
    {
      "x1": 3,
      "y1": 0,
      "x2": 3,
      "y2": 24.5
    },
    {
      "x1": 3,
      "y1": 24.5,
      "x2": -2,
      "y2": 24.5
    },
    {
      "x1": -2,
      "y1": 24.5,
      "x2": -2,
      "y2": -5
    }
  ]
}
)envjson";

inline std::string_view builtin_environment_json(std::string_view name) {
    if (name == "env_a") return kEnvJson_A;
    if (name == "env_b") return kEnvJson_B;
    if (name == "env_c") return kEnvJson_C;
    throw ConfigError("unknown built-in environment '" + std::string(name) +
                      "' (expected env_a, env_b or env_c)");
}

inline EnvironmentMap builtin_environment(std::string_view name) {
    return load_environment_json(std::string(builtin_environment_json(name)));
}

}  // namespace nav
