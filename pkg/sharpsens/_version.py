version_json = '''
{
 "dirty": false,
 "error": null,
 "full-revisionid": null,
 "version": "0.1.0"
}
'''


def get_versions():
    import json
    return json.loads(version_json)
