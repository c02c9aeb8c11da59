# **************************************************************************************************************
#
#  Copyright 2026 The CompressedCounting Authors
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.
#
# **************************************************************************************************************
#
# CRepositoryConfig.py
#
# Purpose:
# - Static repository information from config/repository_config.json plus computed values
#   (README path relative to the repository root, package version).
#
# --------------------------------------------------------------------------------------------------------------
#
# 18.10.2026
#
# --------------------------------------------------------------------------------------------------------------

import os, sys, json
import colorama as col

from CompressedCounting.version import VERSION

col.init(autoreset=True)
COLBR = col.Style.BRIGHT + col.Fore.RED

# --------------------------------------------------------------------------------------------------------------

def printerror(sMsg):
    sys.stderr.write(COLBR + f"Error: {sMsg}!\n")

# --------------------------------------------------------------------------------------------------------------

class CRepositoryConfig():

    def __init__(self, sCalledBy):

        self.__sReferencePath = os.path.dirname(os.path.abspath(sCalledBy))

        # load static configuration values (name of json file is fix)
        sRepositoryConfigurationFile = os.path.join(self.__sReferencePath, "config", "repository_config.json")
        with open(sRepositoryConfigurationFile, encoding="utf-8") as hRepositoryConfigurationFile:
            self.__dictRepositoryConfig = json.load(hRepositoryConfigurationFile)

        # version of the package this repository configuration belongs to
        self.__dictRepositoryConfig['PACKAGEVERSION'] = VERSION
        self.__dictRepositoryConfig['README_MD']      = os.path.join(self.__sReferencePath, "README.md")


    def Get(self, sName=None):
        if ( (sName is None) or (sName not in self.__dictRepositoryConfig) ):
            printerror(f"Configuration parameter '{sName}' not existing")
            return None
        return self.__dictRepositoryConfig[sName]
    # eof def Get(self, sName=None):

# eof class CRepositoryConfig():

# --------------------------------------------------------------------------------------------------------------
