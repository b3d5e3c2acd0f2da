#pragma once

#define TROTTERLAB_VERSION "0.1.0"
