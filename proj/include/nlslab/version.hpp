#pragma once

#define NLSLAB_VERSION "0.1.0"
