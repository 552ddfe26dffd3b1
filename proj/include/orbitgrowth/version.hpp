#pragma once

#define ORBITGROWTH_VERSION_MAJOR 1
#define ORBITGROWTH_VERSION_MINOR 0
#define ORBITGROWTH_VERSION_PATCH 0
#define ORBITGROWTH_VERSION "1.0.0"
